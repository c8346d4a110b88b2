#include "softdmp/entropy.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace softdmp {

EntropyParam EntropyParam::finite(double v) {
    if (std::isnan(v)) throw std::invalid_argument("EntropyParam: NaN is not a valid entropy value");
    if (v >= kInfinityThreshold) return pos_inf();
    if (v <= -kInfinityThreshold) return neg_inf();
    return EntropyParam(Tag::Finite, v);
}

EntropyParam EntropyParam::parse(const std::string& text) {
    std::string t;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) t += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    if (t == "inf" || t == "+inf" || t == "infinity" || t == "+infinity") return pos_inf();
    if (t == "-inf" || t == "-infinity") return neg_inf();
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(t, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("EntropyParam: cannot parse '" + text + "'");
    }
    if (pos != t.size()) throw std::invalid_argument("EntropyParam: cannot parse '" + text + "'");
    return finite(v);
}

double EntropyParam::value() const {
    if (tag_ != Tag::Finite) throw std::logic_error("EntropyParam::value on infinite parameter");
    return value_;
}

EntropyParam EntropyParam::negated() const {
    switch (tag_) {
        case Tag::PosInf: return neg_inf();
        case Tag::NegInf: return pos_inf();
        default: return EntropyParam(Tag::Finite, -value_);
    }
}

std::string EntropyParam::str() const {
    if (tag_ == Tag::PosInf) return "inf";
    if (tag_ == Tag::NegInf) return "-inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", value_);
    return buf;
}

bool EntropyParam::operator<(const EntropyParam& other) const {
    auto rank = [](Tag t) { return t == Tag::NegInf ? 0 : (t == Tag::Finite ? 1 : 2); };
    if (tag_ != other.tag_) return rank(tag_) < rank(other.tag_);
    return tag_ == Tag::Finite && value_ < other.value_;
}

bool EntropyParam::operator==(const EntropyParam& other) const {
    if (tag_ != other.tag_) return false;
    return tag_ != Tag::Finite || value_ == other.value_;
}

}  // namespace softdmp
