#pragma once

#include <string>

#include "fppkit/exact/compositum.hpp"
#include "fppkit/exact/cyclotomic.hpp"
#include "fppkit/exact/integer.hpp"
#include "fppkit/exact/number_field.hpp"
#include "fppkit/exact/prime_field.hpp"
#include "fppkit/exact/residue.hpp"

// Uniform access to the closed set of coefficient rings. Ring-dependent
// data (the prime of F_p, the modulus of Z/p^k, the number field) travels
// with a prototype element, so zero/one are always made "like" another value.
namespace fppkit::exact {

template <class C>
struct RingTraits;

template <>
struct RingTraits<Integer> {
  static bool is_zero(const Integer& a) { return a == 0; }
  static Integer zero_like(const Integer&) { return 0; }
  static Integer one_like(const Integer&) { return 1; }
  static Integer from_rational(const Integer&, const Rational& q) {
    if (q.get_den() != 1) throw InvalidInput("non-integral coefficient " + q.get_str() + " in ring zz");
    return q.get_num();
  }
  static bool is_field(const Integer&) { return false; }
  static Integer inverse(const Integer& a) {
    if (a == 1 || a == -1) return a;
    throw NotAField("integer " + a.get_str() + " is not invertible");
  }
  static std::string to_string(const Integer& a) { return a.get_str(); }
  static std::string tag(const Integer&) { return "zz"; }
  static bool is_one(const Integer& a) { return a == 1; }
};

template <>
struct RingTraits<Rational> {
  static bool is_zero(const Rational& a) { return a == 0; }
  static Rational zero_like(const Rational&) { return 0; }
  static Rational one_like(const Rational&) { return 1; }
  static Rational from_rational(const Rational&, const Rational& q) { return q; }
  static bool is_field(const Rational&) { return true; }
  static Rational inverse(const Rational& a) {
    if (a == 0) throw ArithmeticError("division by zero");
    return 1 / a;
  }
  static std::string to_string(const Rational& a) { return a.get_str(); }
  static std::string tag(const Rational&) { return "qq"; }
  static bool is_one(const Rational& a) { return a == 1; }
};

template <>
struct RingTraits<Fp> {
  static bool is_zero(const Fp& a) { return a.is_zero(); }
  static Fp zero_like(const Fp& a) { return Fp(a.prime(), 0); }
  static Fp one_like(const Fp& a) { return Fp(a.prime(), 1); }
  static Fp from_rational(const Fp& a, const Rational& q) { return Fp::from_rational(a.prime(), q); }
  static bool is_field(const Fp&) { return true; }
  static Fp inverse(const Fp& a) { return a.inverse(); }
  static std::string to_string(const Fp& a) { return std::to_string(a.value()); }
  static std::string tag(const Fp& a) { return "fp:" + std::to_string(a.prime()); }
  static bool is_one(const Fp& a) { return a.value() == 1; }
};

template <>
struct RingTraits<Residue> {
  static bool is_zero(const Residue& a) { return a.is_zero(); }
  static Residue zero_like(const Residue& a) { return a.with_value(0); }
  static Residue one_like(const Residue& a) { return a.with_value(1); }
  static Residue from_rational(const Residue& a, const Rational& q) {
    return Residue::from_rational(q, a.prime(), a.exponent());
  }
  static bool is_field(const Residue& a) { return a.exponent() == 1; }
  static Residue inverse(const Residue& a) { return a.inverse(); }
  static std::string to_string(const Residue& a) { return a.value().get_str(); }
  static std::string tag(const Residue& a) {
    return "zpk:" + a.prime().get_str() + ":" + std::to_string(a.exponent());
  }
  static bool is_one(const Residue& a) { return a.value() == 1; }
};

template <>
struct RingTraits<NumberFieldElement> {
  static bool is_zero(const NumberFieldElement& a) { return a.is_zero(); }
  static NumberFieldElement zero_like(const NumberFieldElement& a) { return a.zero_like(); }
  static NumberFieldElement one_like(const NumberFieldElement& a) { return a.one_like(); }
  static NumberFieldElement from_rational(const NumberFieldElement& a, const Rational& q) {
    return NumberFieldElement::from_rational(a.field(), q);
  }
  static bool is_field(const NumberFieldElement&) { return true; }
  static NumberFieldElement inverse(const NumberFieldElement& a) { return a.inverse(); }
  static std::string to_string(const NumberFieldElement& a) {
    if (a.is_rational()) return a.coords()[0].get_str();
    if (*a.field() == *fields::q_sqrt_m2_m3()) return "(" + compositum::format(a) + ")";
    if (*a.field() == *fields::q_sqrt_m2()) return "(" + a.to_string("s2") + ")";
    return "(" + a.to_string("t") + ")";
  }
  static std::string tag(const NumberFieldElement& a) {
    if (*a.field() == *fields::q_sqrt_m2_m3()) return "nf:s2s3";
    if (*a.field() == *fields::q_sqrt_m2()) return "nf:s2";
    if (*a.field() == *fields::rationals()) return "qq";
    throw InvalidInput("number field " + a.field()->name() + " has no text tag");
  }
  static bool is_one(const NumberFieldElement& a) { return a == a.one_like(); }
};

template <>
struct RingTraits<CyclotomicElement> {
  static bool is_zero(const CyclotomicElement& a) { return a.is_zero(); }
  static CyclotomicElement zero_like(const CyclotomicElement& a) { return a.zero_like(); }
  static CyclotomicElement one_like(const CyclotomicElement& a) { return a.one_like(); }
  static CyclotomicElement from_rational(const CyclotomicElement& a, const Rational& q) {
    return CyclotomicElement(a.conductor(), q);
  }
  static bool is_field(const CyclotomicElement&) { return true; }
  static CyclotomicElement inverse(const CyclotomicElement& a) { return a.inverse(); }
  static std::string to_string(const CyclotomicElement& a) {
    return a.is_rational() ? a.coords()[0].get_str() : "(" + a.to_string("w") + ")";
  }
  static std::string tag(const CyclotomicElement& a) { return "cyc:" + std::to_string(a.conductor()); }
  static bool is_one(const CyclotomicElement& a) { return a == a.one_like(); }
};

}  // namespace fppkit::exact
