#include "softdmp/rng.hpp"

#include <sstream>
#include <stdexcept>

namespace softdmp {

std::size_t Rng::next_index(std::size_t n) {
    if (n == 0) throw std::invalid_argument("Rng::next_index: n must be > 0");
    // Multiply-shift maps one 64-bit draw onto [0, n). The bias is
    // n / 2^64, negligible for the buffer and action-set sizes used here.
    const std::uint64_t x = engine_();
    return static_cast<std::size_t>(
        (static_cast<unsigned __int128>(x) * static_cast<unsigned __int128>(n)) >> 64);
}

std::size_t Rng::sample(std::span<const double> probs) {
    if (probs.empty()) throw std::invalid_argument("Rng::sample: empty distribution");
    const double u = next_double();
    double cum = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        cum += probs[i];
        if (u < cum) return i;
    }
    // Rounding can leave cum slightly below 1; fall back to the last entry.
    return probs.size() - 1;
}

std::string Rng::save_state() const {
    std::ostringstream os;
    os << engine_;
    return os.str();
}

void Rng::load_state(const std::string& text) {
    std::istringstream is(text);
    is >> engine_;
    if (is.fail()) throw std::runtime_error("Rng::load_state: malformed state string");
}

}  // namespace softdmp
