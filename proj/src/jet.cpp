#include "nbtb/jet.hpp"

namespace nbtb {

Jet2 jet_var(Var which, double value) { return Jet2::variable(which, value); }

Jet2 jet_arith(const Jet2& a, const Jet2& b, JetOp op) {
  switch (op) {
    case JetOp::add:
      return a + b;
    case JetOp::sub:
      return a - b;
    case JetOp::mul:
      return a * b;
    case JetOp::div:
      return a / b;
  }
  return a;
}

Jet2 jet_func(const Jet2& a, JetFunc f, double exponent) {
  switch (f) {
    case JetFunc::sin:
      return sin(a);
    case JetFunc::cos:
      return cos(a);
    case JetFunc::exp:
      return exp(a);
    case JetFunc::sqrt:
      return sqrt(a);
    case JetFunc::sinh:
      return sinh(a);
    case JetFunc::cosh:
      return cosh(a);
    case JetFunc::atan:
      return atan(a);
    case JetFunc::pow:
      return pow(a, exponent);
  }
  return a;
}

}  // namespace nbtb
