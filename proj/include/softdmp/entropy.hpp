#pragma once

#include <string>

namespace softdmp {

/// Extended-real entropy parameter selecting a value operator:
/// -inf = min, (negative) = mellow-min, 0 = mean, (positive) = mellow-max,
/// +inf = max.
///
/// Finite magnitudes at or above kInfinityThreshold collapse to the hard
/// operators; past that point the exp() shifts underflow and the soft
/// operator is numerically indistinguishable from the hard one anyway.
class EntropyParam {
public:
    static constexpr double kInfinityThreshold = 1e7;

    static EntropyParam pos_inf() { return EntropyParam(Tag::PosInf, 0.0); }
    static EntropyParam neg_inf() { return EntropyParam(Tag::NegInf, 0.0); }

    /// Finite value; NaN is rejected, |v| >= kInfinityThreshold maps to +/-inf.
    static EntropyParam finite(double v);

    /// Parse "inf", "+inf", "-inf" (also "infinity" forms) or a number.
    static EntropyParam parse(const std::string& text);

    bool is_pos_inf() const { return tag_ == Tag::PosInf; }
    bool is_neg_inf() const { return tag_ == Tag::NegInf; }
    bool is_finite() const { return tag_ == Tag::Finite; }
    bool is_zero() const { return tag_ == Tag::Finite && value_ == 0.0; }
    bool is_negative() const { return tag_ == Tag::NegInf || (tag_ == Tag::Finite && value_ < 0.0); }
    bool is_positive() const { return tag_ == Tag::PosInf || (tag_ == Tag::Finite && value_ > 0.0); }

    /// Finite magnitude; only valid when is_finite().
    double value() const;

    EntropyParam negated() const;

    /// "inf" / "-inf" / decimal text; round-trips through parse().
    std::string str() const;

    /// Ordering on the extended real line.
    bool operator<(const EntropyParam& other) const;
    bool operator==(const EntropyParam& other) const;

private:
    enum class Tag { NegInf, Finite, PosInf };
    EntropyParam(Tag tag, double value) : tag_(tag), value_(value) {}

    Tag tag_;
    double value_;
};

}  // namespace softdmp
