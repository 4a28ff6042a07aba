#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "fppkit/exact/expression.hpp"
#include "fppkit/mpoly/ideal.hpp"

// Text format shared by the ideal, certificate and verification tools:
//
//   ring <tag> vars <n> order <grevlex|lex>
//   <generator>
//   ...
//
// tags: zz, qq, fp:<p>, zpk:<p>:<k>, nf:s2, nf:s2s3, cyc:<n>. Variables are
// x0..x{n-1}; number-field constants are s2, s3, s6 (nf) or w (cyc).
namespace fppkit::mpoly {

using exact::CyclotomicElement;
using exact::Fp;
using exact::Integer;
using exact::NumberFieldElement;
using exact::Rational;
using exact::Residue;

struct RingSpec {
  enum class Kind { zz, qq, fp, zpk, nf_s2, nf_s2s3, cyc } kind = Kind::qq;
  Integer p = 0;
  unsigned k = 1;
  unsigned conductor = 0;

  std::string tag() const {
    switch (kind) {
      case Kind::zz: return "zz";
      case Kind::qq: return "qq";
      case Kind::fp: return "fp:" + p.get_str();
      case Kind::zpk: return "zpk:" + p.get_str() + ":" + std::to_string(k);
      case Kind::nf_s2: return "nf:s2";
      case Kind::nf_s2s3: return "nf:s2s3";
      case Kind::cyc: return "cyc:" + std::to_string(conductor);
    }
    return "?";
  }

  static RingSpec parse(const std::string& tag) {
    RingSpec r;
    auto split = [&](std::size_t pos) { return tag.substr(pos); };
    if (tag == "zz") r.kind = Kind::zz;
    else if (tag == "qq") r.kind = Kind::qq;
    else if (tag == "nf:s2") r.kind = Kind::nf_s2;
    else if (tag == "nf:s2s3") r.kind = Kind::nf_s2s3;
    else if (tag.rfind("fp:", 0) == 0) {
      r.kind = Kind::fp;
      r.p = exact::parse_integer(split(3));
      if (r.p < 2 || r.p >= (Integer(1) << 31) || !exact::is_probable_prime(r.p))
        throw InvalidInput("fp:<p> needs a prime below 2^31, got " + r.p.get_str());
    } else if (tag.rfind("zpk:", 0) == 0) {
      r.kind = Kind::zpk;
      auto rest = split(4);
      auto colon = rest.find(':');
      if (colon == std::string::npos) throw InvalidInput("zpk tag must be zpk:<p>:<k>");
      r.p = exact::parse_integer(rest.substr(0, colon));
      r.k = static_cast<unsigned>(std::stoul(rest.substr(colon + 1)));
      if (!exact::is_probable_prime(r.p) || r.k < 1) throw InvalidInput("bad zpk tag " + tag);
    } else if (tag.rfind("cyc:", 0) == 0) {
      r.kind = Kind::cyc;
      r.conductor = static_cast<unsigned>(std::stoul(split(4)));
      if (r.conductor < 1) throw InvalidInput("bad cyclotomic conductor");
    } else {
      throw InvalidInput("unknown ring tag '" + tag + "'");
    }
    return r;
  }
};

// Calls fn(proto) with a zero element of the ring described by `spec`.
template <class F>
decltype(auto) with_ring(const RingSpec& spec, F&& fn) {
  using K = RingSpec::Kind;
  switch (spec.kind) {
    case K::zz: return fn(Integer(0));
    case K::qq: return fn(Rational(0));
    case K::fp: return fn(Fp(static_cast<std::uint32_t>(spec.p.get_ui()), 0));
    case K::zpk: return fn(Residue(spec.p, spec.k, 0));
    case K::nf_s2: return fn(NumberFieldElement::from_rational(exact::fields::q_sqrt_m2(), 0));
    case K::nf_s2s3: return fn(NumberFieldElement::from_rational(exact::fields::q_sqrt_m2_m3(), 0));
    case K::cyc: return fn(CyclotomicElement(spec.conductor, Rational(0)));
  }
  throw InvalidInput("unsupported ring");
}

template <class C>
RingSpec ring_of(const C& proto) {
  return RingSpec::parse(RingTraits<C>::tag(proto));
}

// Ring constants visible in expressions: s2/s3/s6 or w.
template <class C>
C ring_symbol(const C& proto, const std::string& name) {
  if constexpr (std::is_same_v<C, NumberFieldElement>) {
    if (*proto.field() == *exact::fields::q_sqrt_m2_m3()) {
      if (name == "s2") return exact::compositum::s2();
      if (name == "s3") return exact::compositum::s3();
      if (name == "s6") return exact::compositum::s6();
    } else if (*proto.field() == *exact::fields::q_sqrt_m2() && name == "s2") {
      return NumberFieldElement::generator(proto.field());
    }
  } else if constexpr (std::is_same_v<C, CyclotomicElement>) {
    if (name == "w") return CyclotomicElement::root_of_unity(proto.conductor(), 1);
  }
  throw InvalidInput("unknown symbol '" + name + "'");
}

inline std::size_t parse_var_index(const std::string& name, std::size_t nvars) {
  if (name.size() < 2 || name[0] != 'x') return nvars;
  for (std::size_t i = 1; i < name.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return nvars;
  std::size_t i = std::stoul(name.substr(1));
  if (i >= nvars) throw InvalidInput("variable " + name + " out of range (vars " + std::to_string(nvars) + ")");
  return i;
}

template <class C>
Poly<C> parse_poly(std::string_view text, std::size_t nvars, Order order, const C& proto) {
  exact::ExpressionParser<Poly<C>> parser(
      [&](const Rational& q) { return Poly<C>::constant(nvars, order, RingTraits<C>::from_rational(proto, q)); },
      [&](const std::string& name) {
        std::size_t i = parse_var_index(name, nvars);
        if (i < nvars) return Poly<C>::variable(nvars, order, proto, i);
        return Poly<C>::constant(nvars, order, ring_symbol(proto, name));
      });
  return parser.parse(text);
}

struct IdealHeader {
  RingSpec ring;
  std::size_t nvars = 0;
  Order order = Order::grevlex;
};

inline IdealHeader parse_header(const std::string& line, std::size_t lineno) {
  std::istringstream in(line);
  std::string w1, tag, w2, w3, ord;
  std::size_t n = 0;
  if (!(in >> w1 >> tag >> w2 >> n) || w1 != "ring" || w2 != "vars")
    throw ParseError(lineno, "expected 'ring <tag> vars <n> order <grevlex|lex>'");
  IdealHeader h;
  try {
    h.ring = RingSpec::parse(tag);
  } catch (const InvalidInput& e) {
    throw ParseError(lineno, e.what());
  }
  h.nvars = n;
  if (in >> w3) {
    if (w3 != "order" || !(in >> ord)) throw ParseError(lineno, "expected 'order <grevlex|lex>'");
    try {
      h.order = parse_order(ord);
    } catch (const InvalidInput& e) {
      throw ParseError(lineno, e.what());
    }
  }
  return h;
}

// Strips comments and surrounding blanks.
inline std::string clean_line(const std::string& raw) {
  auto s = raw.substr(0, raw.find('#'));
  return std::string(fppkit::detail::trim(s));
}

using AnyIdeal = std::variant<IdealBasis<Integer>, IdealBasis<Rational>, IdealBasis<Fp>, IdealBasis<Residue>,
                              IdealBasis<NumberFieldElement>, IdealBasis<CyclotomicElement>>;

inline AnyIdeal parse_ideal(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  std::optional<IdealHeader> header;
  std::vector<std::pair<std::size_t, std::string>> lines;
  while (std::getline(in, raw)) {
    ++lineno;
    auto s = clean_line(raw);
    if (s.empty()) continue;
    if (!header) header = parse_header(s, lineno);
    else lines.emplace_back(lineno, s);
  }
  if (!header) throw ParseError(lineno, "missing 'ring' header");
  return with_ring(header->ring, [&](auto proto) -> AnyIdeal {
    using C = decltype(proto);
    IdealBasis<C> I(header->nvars, header->order, proto);
    for (const auto& [ln, s] : lines) {
      try {
        I.add(parse_poly<C>(s, header->nvars, header->order, proto));
      } catch (const ParseError&) {
        throw;
      } catch (const Error& e) {
        throw ParseError(ln, e.what());
      }
    }
    return I;
  });
}

inline std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InvalidInput("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

inline AnyIdeal load_ideal(const std::string& path) { return parse_ideal(read_file(path)); }

template <class C>
std::string format_ideal(const IdealBasis<C>& I) {
  std::string out = "ring " + RingTraits<C>::tag(I.proto()) + " vars " + std::to_string(I.nvars()) + " order " +
                    order_name(I.order()) + "\n";
  for (const auto& g : I.generators()) out += g.to_string() + "\n";
  return out;
}

// Image of an integer / rational / F_p ideal in F_p.
template <class C>
IdealBasis<Fp> reduce_mod_p(const IdealBasis<C>& I, std::uint32_t p) {
  Fp proto(p, 0);
  IdealBasis<Fp> out(I.nvars(), I.order(), proto);
  for (const auto& g : I.generators()) {
    out.add(g.template map_coeffs<Fp>(proto, [&](const C& c) -> Fp {
      if constexpr (std::is_same_v<C, Integer>) return Fp::from_integer(p, c);
      else if constexpr (std::is_same_v<C, Rational>) return Fp::from_rational(p, c);
      else if constexpr (std::is_same_v<C, Fp>) {
        if (c.prime() != p) throw InvalidInput("ideal is over F_" + std::to_string(c.prime()));
        return c;
      } else if constexpr (std::is_same_v<C, Residue>) {
        if (c.prime() != p) throw InvalidInput("ideal is over Z/" + c.prime().get_str() + "^k");
        return Fp::from_integer(p, c.value());
      } else {
        throw InvalidInput("cannot reduce " + RingTraits<C>::tag(c) + " coefficients modulo a prime");
      }
    }));
  }
  return out;
}

inline IdealBasis<Fp> ideal_mod_p(const AnyIdeal& I, std::uint32_t p) {
  return std::visit([&](const auto& J) { return reduce_mod_p(J, p); }, I);
}

}  // namespace fppkit::mpoly
