#include "equinorm/rational.hpp"

#include <stdexcept>

namespace equinorm {

Rat rat_parse(const std::string& s) {
    if (s.empty())
        throw std::invalid_argument("empty rational literal");
    try {
        // cpp_rational accepts "a/b" and plain integers directly.
        Rat q(s);
        return q;
    } catch (const std::exception&) {
        throw std::invalid_argument("bad rational literal: " + s);
    }
}

std::string rat_num_str(const Rat& q) {
    return numerator(q).str();
}

std::string rat_den_str(const Rat& q) {
    return denominator(q).str();
}

std::string rat_str(const Rat& q) {
    if (denominator(q) == 1)
        return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

double rat_to_double(const Rat& q) {
    return q.convert_to<double>();
}

std::optional<Rat> rat_exact_sqrt(const Rat& q) {
    if (q < 0)
        return std::nullopt;
    const BigInt num = numerator(q);
    const BigInt den = denominator(q);
    const BigInt rn = sqrt(num);
    const BigInt rd = sqrt(den);
    if (rn * rn != num || rd * rd != den)
        return std::nullopt;
    return Rat(rn, rd);
}

} // namespace equinorm
