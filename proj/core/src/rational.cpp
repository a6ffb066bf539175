#include "demonwalk/rational.hpp"

namespace demonwalk {

std::string Rational::to_string() const {
    if (den() == 1) return num().str();
    return num().str() + "/" + den().str();
}

double Rational::to_double() const {
    return num().convert_to<double>() / den().convert_to<double>();
}

Rational::Int Rational::floor() const {
    Int q = num() / den();
    if (num() < 0 && q * den() != num()) --q;  // integer division truncates toward zero
    return q;
}

Rational Rational::mod1() const {
    Rational f(floor(), 1);
    return *this - f;
}

std::string to_string(const Rational& r) { return r.to_string(); }

}  // namespace demonwalk
