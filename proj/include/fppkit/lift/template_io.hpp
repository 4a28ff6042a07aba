#pragma once

#include <sstream>
#include <variant>

#include "fppkit/lift/certificate.hpp"

// Template files extend the ideal format:
//
//   ring qq vars 3 order grevlex
//   prime 7                 # optional, the CLI may override
//   root 3                  # optional, generator image mod p (nf rings)
//   target: x0^3 - x0*x1*x2
//   slot degree=1           # following generators get degree-1 multipliers
//   x0^2 - x1*x2
//   slot degree=3 nf
//   knownfactor: x0 + x1 + x2
//
// Each generator line or knownfactor line opens one unknown slot with the
// degree and flags of the most recent `slot` stanza.
namespace fppkit::lift {

using AnyTemplate = std::variant<CertificateTemplate<Rational>, CertificateTemplate<NumberFieldElement>>;

inline AnyTemplate parse_template(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  std::optional<mpoly::IdealHeader> header;
  std::vector<std::pair<std::size_t, std::string>> body;
  while (std::getline(in, raw)) {
    ++lineno;
    auto s = mpoly::clean_line(raw);
    if (s.empty()) continue;
    if (!header) header = mpoly::parse_header(s, lineno);
    else body.emplace_back(lineno, s);
  }
  if (!header) throw ParseError(lineno, "missing 'ring' header");
  using K = mpoly::RingSpec::Kind;
  auto kind = header->ring.kind;
  if (kind != K::qq && kind != K::zz && kind != K::nf_s2 && kind != K::nf_s2s3)
    throw ParseError(1, "certificate templates need ring qq, zz, nf:s2 or nf:s2s3");

  auto build = [&](auto proto) -> AnyTemplate {
    using C = decltype(proto);
    std::size_t n = header->nvars;
    Order o = header->order;
    CertificateTemplate<C> t{Poly<C>(n, o, proto), {}, Integer(0), std::nullopt};
    bool have_target = false;
    std::optional<unsigned> degree;
    bool nf = false;
    auto poly = [&](std::size_t ln, const std::string& s) {
      try {
        return mpoly::parse_poly<C>(s, n, o, proto);
      } catch (const ParseError&) {
        throw;
      } catch (const Error& e) {
        throw ParseError(ln, e.what());
      }
    };
    for (const auto& [ln, s] : body) {
      std::istringstream ws(s);
      std::string word;
      ws >> word;
      if (word == "prime" || word == "root") {
        std::string v;
        if (!(ws >> v)) throw ParseError(ln, "expected a value after '" + word + "'");
        try {
          (word == "prime" ? t.prime : t.root.emplace()) = exact::parse_integer(v);
        } catch (const Error& e) {
          throw ParseError(ln, e.what());
        }
      } else if (s.rfind("target:", 0) == 0) {
        if (have_target) throw ParseError(ln, "duplicate target");
        t.target = poly(ln, s.substr(7));
        have_target = true;
      } else if (word == "slot") {
        degree.reset();
        nf = false;
        std::string opt;
        while (ws >> opt) {
          if (opt.rfind("degree=", 0) == 0) {
            try {
              auto d = exact::parse_integer(opt.substr(7));
              if (d < 0 || d > 1000) throw InvalidInput("slot degree out of range");
              degree = static_cast<unsigned>(d.get_ui());
            } catch (const Error& e) {
              throw ParseError(ln, e.what());
            }
          } else if (opt == "nf") {
            nf = true;
          } else {
            throw ParseError(ln, "unknown slot option '" + opt + "'");
          }
        }
        if (!degree) throw ParseError(ln, "slot stanza needs degree=<d>");
      } else {
        bool kf = s.rfind("knownfactor:", 0) == 0;
        if (!degree) throw ParseError(ln, "generator before any 'slot degree=d' stanza");
        t.slots.push_back(Slot<C>{poly(ln, kf ? s.substr(12) : s), *degree, kf, nf});
      }
    }
    if (!have_target) throw ParseError(lineno, "template has no 'target:' line");
    if (t.slots.empty()) throw ParseError(lineno, "template has no unknown slot");
    return t;
  };
  switch (kind) {
    case K::nf_s2: return build(NumberFieldElement::from_rational(exact::fields::q_sqrt_m2(), 0));
    case K::nf_s2s3: return build(NumberFieldElement::from_rational(exact::fields::q_sqrt_m2_m3(), 0));
    default: return build(Rational(0));
  }
}

inline AnyTemplate load_template(const std::string& path) { return parse_template(mpoly::read_file(path)); }

}  // namespace fppkit::lift
