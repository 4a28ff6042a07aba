#pragma once

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "fppkit/geom/ledger.hpp"
#include "fppkit/geom/reynolds.hpp"
#include "fppkit/groebner/hilbert.hpp"
#include "fppkit/grouprep/characters.hpp"
#include "fppkit/lattice/recognize.hpp"
#include "fppkit/lattice/shrink.hpp"
#include "fppkit/lift/template_io.hpp"
#include "fppkit/verify/pipeline.hpp"

// Command implementations behind the fppkit tool. Each writes its report to
// `out` and returns the process status: 0 ok/pass, 1 negative result, 2 error.
namespace fppkit::cli {

using exact::Integer;
using exact::Rational;

constexpr int kOk = 0, kFail = 1, kError = 2;
constexpr unsigned kDefaultDigits = 100;

// FPPKIT_DIGITS overrides the default working precision (decimal digits).
inline unsigned default_digits() {
  const char* env = std::getenv("FPPKIT_DIGITS");
  if (!env || !*env) return kDefaultDigits;
  try {
    std::size_t used = 0;
    unsigned long d = std::stoul(env, &used);
    if (used == std::strlen(env) && d >= 2 && d <= 100000) return static_cast<unsigned>(d);
  } catch (const std::exception&) {
  }
  throw InvalidInput(std::string("FPPKIT_DIGITS must be an integer >= 2, got '") + env + "'");
}

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidInput("cannot write " + path);
  f << text;
  if (!f) throw Error("write failed for " + path);
}

inline std::string join(const std::vector<std::size_t>& v, const std::string& sep = " ") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
  return s;
}

// ---- grouprep -------------------------------------------------------------

inline grouprep::FiniteGroup named_group(const std::string& name) {
  const auto& G = grouprep::build_g648();
  if (name == "g648") return G.group;
  if (name == "q8") return G.group.subgroup(G.q8(), "Q8");
  if (name == "sl2z3") return G.group.subgroup(G.sl2(), "SL(2,3)");
  if (name == "g72") return G.group.subgroup(G.g72(), "G72");
  if (name == "ghat72") return G.group.subgroup(G.ghat72(), "Ghat72");
  if (name.size() > 1 && name[0] == 'c' && name.find_first_not_of("0123456789", 1) == std::string::npos)
    return grouprep::cyclic_group(std::stoul(name.substr(1)));
  throw InvalidInput("unknown group '" + name + "' (g648, g72, ghat72, sl2z3, q8, cN)");
}

inline std::string degree_multiset(const grouprep::CharacterTable& T) {
  std::map<long, int> cnt;
  for (std::size_t i = 0; i < T.size(); ++i) ++cnt[T.degree(i)];
  std::string s;
  for (auto [d, c] : cnt) s += (s.empty() ? "" : " ") + std::to_string(d) + "^" + std::to_string(c);
  return s;
}

inline grouprep::LabelledTable load_printed_table(const std::string& path) {
  return grouprep::parse_labelled_table(mpoly::read_file(path), 3);
}

struct CharTableArgs {
  std::string group = "g648";
  unsigned dixon_prime = 0;  // 0: default prime
  std::string out;
  std::string reference;
};

inline int char_table(const CharTableArgs& a, std::ostream& out) {
  auto G = named_group(a.group);
  grouprep::CharacterTable T;
  if (a.group.size() > 1 && a.group[0] == 'c' && a.group != "c1" && a.dixon_prime == 0)
    T = grouprep::cyclic_character_table(G);
  else
    T = grouprep::character_table_dixon(G, a.dixon_prime ? std::optional<unsigned>(a.dixon_prime) : std::nullopt);
  std::string why;
  bool orth = grouprep::check_orthogonality(T, &why);
  long sum = 0;
  for (std::size_t i = 0; i < T.size(); ++i) sum += T.degree(i) * T.degree(i);
  out << "group: " << G.name() << " order " << G.order() << "\n";
  out << "classes: " << T.classes->count() << "\n";
  out << "conductor: " << T.conductor << "\n";
  if (T.dixon_prime) out << "dixon prime: " << T.dixon_prime << "\n";
  out << "degrees: " << degree_multiset(T) << "\n";
  out << "sum of squared degrees: " << sum << "\n";
  out << "orthogonality: " << (orth ? "exact" : "FAILED " + why) << "\n";
  int status = orth && sum == static_cast<long>(G.order()) ? kOk : kFail;
  if (!a.reference.empty()) {
    auto M = grouprep::match_printed(load_printed_table(a.reference), T);
    if (M) {
      out << "reference: match" << (M->conjugated ? " after w <-> w^2" : "") << "\n";
      std::vector<std::size_t> rows;
      for (auto r : M->match.rows) rows.push_back(r + 1);
      out << "reference rows -> table rows: " << join(rows) << "\n";
    } else {
      out << "reference: NO MATCH\n";
      status = kFail;
    }
  }
  if (!a.out.empty()) {
    write_file(a.out, grouprep::write_table_csv(T, G));
    out << "wrote: " << a.out << "\n";
  }
  return status;
}

struct Decompose71Args {
  std::string table;
  std::string reference;
};

inline int decompose71(const Decompose71Args& a, std::ostream& out) {
  const auto& G = grouprep::build_g648();
  auto T = grouprep::load_table_csv(a.table, G.group);
  auto m = grouprep::decompose_71(T);  // throws unless unique
  std::vector<std::size_t> support;
  long deg = 0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    deg += m[i] * T.degree(i);
    if (m[i]) support.push_back(i + 1);
  }
  out << "multiplicities:";
  for (auto x : m) out << " " << x;
  out << "\nsupport (table rows): " << join(support) << "\n";
  out << "degree: " << deg << "\n";
  out << "unique: yes\n";

  auto chi = grouprep::combine(T, m);
  auto triv = grouprep::trivial_character(T);
  for (std::size_t j = 0; j < chi.size(); ++j) chi[j] = chi[j] + triv[j];
  bool regular = true;
  for (auto [idx, name] : {std::pair{G.g72(), "G72"}, std::pair{G.ghat72(), "Ghat72"}}) {
    auto H = G.group.subgroup(idx, name);
    grouprep::ClassData HC(H);
    bool r = grouprep::is_regular_character(grouprep::restrict_character(T, chi, H, HC), HC);
    out << "restriction of chi + 1 to " << name << ": " << (r ? "regular" : "NOT regular") << "\n";
    regular &= r;
  }
  int status = deg == 71 && regular ? kOk : kFail;
  if (!a.reference.empty()) {
    auto M = grouprep::match_printed(load_printed_table(a.reference), T);
    if (!M) {
      out << "reference: NO MATCH\n";
      return kFail;
    }
    std::vector<std::size_t> printed;
    for (std::size_t i = 0; i < M->match.rows.size(); ++i)
      if (m[M->match.rows[i]]) printed.push_back(i + 1);
    out << "support (reference rows): " << join(printed) << "\n";
  }
  return status;
}

// ---- geom -----------------------------------------------------------------

inline int ledger(std::ostream& out) {
  auto L = geom::h0_ledger();
  out << L.to_string();
  out << "fixed points / Lefschetz sums by level:\n";
  for (long level : {1, 2, 4, 8}) {
    auto r = geom::lefschetz_fixed_points(level);
    out << "  level " << level << ": " << r.fixed_points << " points, sum " << r.lefschetz_sum << "\n";
  }
  out << "provenance: chi(kH) = n(1 + k(k-3)/2) on n.P2fake; h0(6H) = chi(6H), h0(3H) = chi(3H) - 1;"
         " the C3 quotient row is the invariant part of the Lefschetz split\n";
  return kOk;
}

inline int split(long total, long lefschetz, long h2_trace, std::ostream& out) {
  auto s = geom::eigenspace_split(total, lefschetz - h2_trace);
  out << "total: " << total << "\ntrace on H0: " << lefschetz - h2_trace << "\n";
  out << "invariant: " << s.invariant << "\nw: " << s.w << "\nw^2: " << s.w2 << "\n";
  return kOk;
}

inline int reynolds(const std::string& path, std::ostream& out) {
  auto rep = geom::load_representation(path);
  return std::visit(
      [&]<class C>(const std::vector<mpoly::DenseMatrix<C>>& mats) {
        auto P = geom::reynolds_project(mats);
        bool idem = P * P == P;
        out << "group order: " << mats.size() << "\n";
        out << "dimension: " << P.rows() << "\n";
        out << "trace (multiplicity of trivial): " << mpoly::RingTraits<C>::to_string(P.trace()) << "\n";
        out << "rank: " << P.rank() << "\n";
        out << "idempotent: " << (idem ? "yes" : "NO") << "\n";
        out << "projector:\n" << P.to_string();
        return idem ? kOk : kFail;
      },
      rep);
}

// ---- lattice --------------------------------------------------------------

inline std::string margin_policy() {
  return "policy: float candidates accepted at margin >= " + std::to_string(int(lattice::kFloatMarginThreshold)) +
         " and residual below 10^(-N/2); p-adic candidates need (2H)^(d+2) < p^k, height <= H and a squarefree"
         " root mod p^k (artifact's own criterion)";
}

inline int report_recognition(const lattice::Recognition& r, std::ostream& out) {
  if (r) {
    out << "minpoly: " << r.candidate->poly.to_string("x") << "\n";
    out << "degree: " << r.candidate->degree << "\nheight: " << r.candidate->height.get_str() << "\n";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g", r.candidate->margin);
    out << "margin: " << buf << "\n";
  } else {
    out << "minpoly: none\nreason: " << r.reason << "\n";
    if (r.rejected) out << "best rejected: " << lattice::format_candidate(*r.rejected) << "\n";
  }
  out << margin_policy() << "\n";
  return r ? kOk : kFail;
}

struct RecognizeArgs {
  std::string padic;  // v,p,k
  std::string value;
  std::string value_file;
  unsigned degree = 2;
  std::string height = "1000";
  unsigned digits = 0;
  bool force = false;
};

inline int recognize(const RecognizeArgs& a, std::ostream& out) {
  if (!a.padic.empty()) {
    std::vector<std::string> parts;
    std::stringstream ss(a.padic);
    for (std::string t; std::getline(ss, t, ',');) parts.push_back(trim(t));
    if (parts.size() != 3) throw InvalidInput("--padic expects v,p,k");
    Integer p = exact::parse_integer(parts[1]);
    unsigned long k = std::stoul(parts[2]);
    auto r = exact::Residue::from_rational(exact::parse_rational(parts[0]), p, static_cast<unsigned>(k));
    out << "input: " << parts[0] << " mod " << p.get_str() << "^" << k << "\n";
    return report_recognition(lattice::minpoly_from_padic(r, a.degree, exact::parse_integer(a.height), a.force), out);
  }
  std::string v = a.value;
  if (!a.value_file.empty()) {
    std::istringstream is(mpoly::read_file(a.value_file));
    std::getline(is, v);
  }
  v = trim(v);
  if (v.empty()) throw InvalidInput("recognize needs --padic, --float or --float-file");
  unsigned digits = a.digits ? a.digits : default_digits();
  auto x = lattice::ComplexMP::parse(v, lattice::bits_for_digits(digits + 10));
  out << "digits: " << digits << "\n";
  return report_recognition(lattice::minpoly_from_float(x, a.degree, digits), out);
}

inline lattice::IntMatrix read_int_matrix(const std::string& text) {
  lattice::IntMatrix m;
  std::istringstream is(text);
  std::string line;
  std::size_t ln = 0;
  while (std::getline(is, line)) {
    ++ln;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream ls(line);
    std::vector<Integer> row;
    for (std::string t; ls >> t;) {
      try {
        row.push_back(exact::parse_integer(t));
      } catch (const Error&) {
        throw ParseError(ln, "bad integer '" + t + "'");
      }
    }
    if (row.empty()) continue;
    if (!m.empty() && row.size() != m[0].size()) throw ParseError(ln, "row length differs from the first row");
    m.push_back(std::move(row));
  }
  if (m.empty()) throw InvalidInput("matrix file has no rows");
  return m;
}

inline int lll_shrink(const std::string& path, std::ostream& out) {
  auto E = read_int_matrix(mpoly::read_file(path));
  auto r = lattice::shrink_basis(E);
  out << "max entry: " << lattice::max_abs_entry(E).get_str() << " -> " << lattice::max_abs_entry(r.rows).get_str()
      << "\n";
  out << "rows:\n" << lattice::format_matrix(r.rows);
  out << "transform:\n" << lattice::format_matrix(r.transform);
  return kOk;
}

// ---- lift -----------------------------------------------------------------

struct LiftArgs {
  std::string template_file;
  std::string prime;
  unsigned steps = 10;
  std::vector<std::string> reconstruct;  // num_bound den_bound
};

inline int lift_certificate(const LiftArgs& a, std::ostream& out) {
  auto any = lift::load_template(a.template_file);
  return std::visit(
      [&]<class C>(lift::CertificateTemplate<C> t) {
        if (!a.prime.empty()) t.prime = exact::parse_integer(a.prime);
        if (t.prime == 0) throw InvalidInput("no prime: pass --prime or put 'prime p' in the template");
        auto sys = std::make_shared<const lift::CertificateSystem<C>>(t);
        auto sol = lift::certificate_solve_mod_p(sys);
        out << "prime: " << t.prime.get_str() << "\nslots: " << t.slots.size() << "\n";
        if (!sol) {
          out << "mod p: no solution\n";
          return kFail;
        }
        auto check = [&](const lift::CertificateSolution<C>& s) {
          bool z = lift::residual(s).is_zero();
          out << "k=" << s.k << ": residual " << (z ? "0" : "NONZERO") << "\n";
          return z;
        };
        if (!check(*sol)) return kFail;
        for (unsigned j = 0; j < a.steps; ++j) {
          sol = lift::certificate_lift(*sol, 1);
          if (!check(*sol)) return kFail;
        }
        auto H = sol->slots();
        for (std::size_t s = 0; s < H.size(); ++s) out << "H" << s << " mod p^" << sol->k << " = " << H[s].to_string() << "\n";
        if (a.reconstruct.empty()) return kOk;
        if (a.reconstruct.size() != 2) throw InvalidInput("--reconstruct takes num_bound den_bound");
        lift::ReconstructBounds b{exact::parse_integer(a.reconstruct[0]), exact::parse_integer(a.reconstruct[1])};
        auto ex = lift::certificate_reconstruct(*sol, b);
        if (!ex) {
          out << "reconstruction: failed (" << ex.reason << ")\n";
          return kFail;
        }
        out << "reconstruction: exact identity verified\n";
        for (std::size_t s = 0; s < ex.slots->size(); ++s) out << "H" << s << " = " << (*ex.slots)[s].to_string() << "\n";
        return kOk;
      },
      any);
}

// ---- groebner / verify ----------------------------------------------------

inline mpoly::Order parse_order(const std::string& s) {
  if (s == "grevlex") return mpoly::Order::grevlex;
  if (s == "lex") return mpoly::Order::lex;
  throw InvalidInput("unknown order '" + s + "' (grevlex, lex)");
}

struct HilbertArgs {
  std::string ideal;
  std::string order;
  std::uint32_t mod = 0;
  unsigned degree_cap = 0;
};

inline int hilbert(const HilbertArgs& a, std::ostream& out) {
  auto I = mpoly::load_ideal(a.ideal);
  std::optional<mpoly::Order> ord;
  if (!a.order.empty()) ord = parse_order(a.order);
  groebner::BuchbergerOptions opts;
  if (a.degree_cap) opts.degree_cap = a.degree_cap;
  auto run = [&](const auto& J) {
    auto G = groebner::buchberger(J, ord, opts);
    auto h = groebner::hilbert(G);
    out << "groebner basis size: " << G.polys().size() << "\n";
    out << "series numerator: " << h.numerator.to_string("t") << "\n";
    out << "denominator: (1-t)^" << h.n << "\n";
    out << "hilbert polynomial: " << groebner::format_hilbert_poly(h.polynomial) << "\n";
    out << "regularity index: " << h.regularity << "\n";
    out << "dimension: " << h.dimension << "\n";
  };
  if (a.mod) run(mpoly::ideal_mod_p(I, a.mod));
  else std::visit(run, I);
  return kOk;
}

struct VerifyArgs {
  std::string ideal;
  std::uint32_t mod = 0;
  std::uint64_t seed = 1;
  std::size_t minors = 3;
  std::size_t probes = 1;
  long dim = 2;
  std::vector<std::string> expected;  // coefficients c0 c1 ... of the polynomial in m
  unsigned degree_cap = 0;
};

inline int verify_fpp(const VerifyArgs& a, std::ostream& out) {
  auto I = mpoly::ideal_mod_p(mpoly::load_ideal(a.ideal), a.mod);
  verify::VerifyOptions o;
  o.seed = a.seed;
  o.minors = a.minors;
  o.probes = a.probes;
  o.expected_dim = a.dim;
  if (a.degree_cap) o.groebner.degree_cap = a.degree_cap;
  if (!a.expected.empty()) {
    std::vector<Rational> c;
    for (const auto& s : a.expected) c.push_back(exact::parse_rational(s));
    o.expected = exact::RatPoly(c);
  }
  auto rep = verify::verify_ideal(I, o);
  out << "seed: " << a.seed << "\n" << rep.to_text();
  return rep.pass() ? kOk : kFail;
}

struct SearchCutsArgs {
  std::string ideal;
  std::uint32_t mod = 0;
  std::string invariant;
  std::size_t budget = 100000;
  std::size_t minors = 0;
  std::uint64_t seed = 1;
};

inline int search_cuts(const SearchCutsArgs& a, std::ostream& out) {
  auto I = mpoly::ideal_mod_p(mpoly::load_ideal(a.ideal), a.mod);
  std::optional<std::vector<mpoly::DenseMatrix<exact::Fp>>> action;
  if (!a.invariant.empty()) {
    auto rep = geom::load_representation(a.invariant);
    auto* q = std::get_if<std::vector<mpoly::DenseMatrix<Rational>>>(&rep);
    if (!q) throw InvalidInput("invariance matrices must be rational");
    action.emplace();
    for (const auto& m : *q) {
      mpoly::DenseMatrix<exact::Fp> g(m.rows(), m.cols(), exact::Fp(a.mod, 0));
      for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) g(i, j) = exact::Fp::from_rational(a.mod, m(i, j));
      action->push_back(std::move(g));
    }
  }
  verify::CutSearchOptions o;
  o.budget = a.budget;
  o.minors_per_cut = a.minors;
  o.seed = a.seed;
  auto r = verify::search_singular_cuts(I, action, o);
  out << "prime: " << a.mod << "\nexamined: " << r.examined << "\n";
  out << "status: " << (r.exhausted ? "partial (budget exhausted)" : "complete") << "\n";
  out << "singular cuts: " << r.cuts.size() << "\n";
  for (const auto& c : r.cuts) {
    out << " ";
    for (auto x : c) out << " " << x;
    out << "\n";
  }
  return r.exhausted ? kFail : kOk;
}

}  // namespace fppkit::cli
