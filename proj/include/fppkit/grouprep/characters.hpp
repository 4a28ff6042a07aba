#pragma once

#include <cctype>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "fppkit/grouprep/dixon.hpp"

namespace fppkit::grouprep {

using ClassFunction = std::vector<CyclotomicElement>;

inline ClassFunction lift_values(const ClassFunction& f, unsigned m) {
  ClassFunction out;
  for (const auto& v : f) out.push_back(v.conductor() == m ? v : v.lift_to(m));
  return out;
}

// Value at each H-class is chi at the G-class containing it. H must have
// been cut out of the group the table was computed for.
inline ClassFunction restrict_character(const CharacterTable& T, const ClassFunction& chi, const FiniteGroup& H,
                                        const ClassData& HC) {
  const auto& GC = *T.classes;
  if (chi.size() != GC.count()) throw InvalidInput("restrict_character: class function has wrong length");
  if (H.parent_order() != GC.group_order() || HC.group_order() != H.order())
    throw InvalidInput("restrict_character: " + H.name() + " is not a subgroup of the table's group");
  ClassFunction out;
  for (const auto& K : HC.classes()) out.push_back(chi[GC.class_of(H.embedding()[K.rep])]);
  return out;
}

inline ClassFunction restrict_character(const CharacterTable& T, std::size_t row, const FiniteGroup& H,
                                        const ClassData& HC) {
  return restrict_character(T, T.chi.at(row), H, HC);
}

inline bool is_regular_character(const ClassFunction& f, const ClassData& C) {
  if (f.size() != C.count() || f.empty()) return false;
  if (!(f[0] == CyclotomicElement(f[0].conductor(), Rational(static_cast<long>(C.group_order()))))) return false;
  for (std::size_t i = 1; i < f.size(); ++i)
    if (!f[i].is_zero()) return false;
  return true;
}

// (1/|G|) sum_C |C| f(C) conj(g(C))
inline CyclotomicElement inner_product(const ClassFunction& f, const ClassFunction& g, const ClassData& C) {
  if (f.size() != C.count() || g.size() != C.count())
    throw InvalidInput("inner_product: class functions do not live on the same group");
  unsigned m = 1;
  for (const auto& v : f) m = std::lcm(m, v.conductor());
  for (const auto& v : g) m = std::lcm(m, v.conductor());
  auto a = lift_values(f, m), b = lift_values(g, m);
  CyclotomicElement s(m, Rational(0));
  for (std::size_t j = 0; j < C.count(); ++j) s = s + (a[j] * b[j].conj()).scaled(static_cast<long>(C[j].size));
  return s.scaled(Rational(1, static_cast<long>(C.group_order())));
}

inline long integer_value(const CyclotomicElement& x, const std::string& what) {
  if (!x.is_rational() || x.rational_value().get_den() != 1) throw Error(what + " is not an integer: " + x.to_string());
  return x.rational_value().get_num().get_si();
}

inline ClassFunction trivial_character(const CharacterTable& T) {
  return ClassFunction(T.classes->count(), CyclotomicElement(T.conductor, Rational(1)));
}

inline ClassFunction combine(const CharacterTable& T, const std::vector<long>& m) {
  ClassFunction out(T.classes->count(), CyclotomicElement(T.conductor, Rational(0)));
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m[i])
      for (std::size_t j = 0; j < out.size(); ++j) out[j] = out[j] + T.chi[i][j].scaled(m[i]);
  return out;
}

struct SubgroupTable {
  const FiniteGroup* group;
  CharacterTable table;
};

// All m >= 0 with (base + sum m_i chi_i)|_H regular for every listed H, up to
// `limit` solutions. Each H gives one linear equation per irreducible psi of
// H: sum m_i <chi_i|H, psi> = psi(1) - <base|H, psi>.
inline std::vector<std::vector<long>> find_regular_completions(const CharacterTable& T,
                                                               const std::vector<SubgroupTable>& subs,
                                                               const ClassFunction& base, std::size_t limit = 2) {
  const std::size_t n = T.size();
  std::vector<std::vector<long>> A;  // constraint rows
  std::vector<long> b;
  std::vector<std::vector<long>> out;
  // right-hand sides first: a negative one means no solution at all
  for (const auto& s : subs) {
    const auto& HC = *s.table.classes;
    auto base_h = restrict_character(T, base, *s.group, HC);
    for (std::size_t k = 0; k < s.table.size(); ++k) {
      b.push_back(s.table.degree(k) - integer_value(inner_product(base_h, s.table.chi[k], HC), "base multiplicity"));
      if (b.back() < 0) return out;
    }
  }
  for (const auto& s : subs) {
    const auto& HC = *s.table.classes;
    std::vector<ClassFunction> res;
    for (std::size_t i = 0; i < n; ++i) res.push_back(restrict_character(T, i, *s.group, HC));
    for (std::size_t k = 0; k < s.table.size(); ++k) {
      const auto& psi = s.table.chi[k];
      std::vector<long> row;
      for (std::size_t i = 0; i < n; ++i) {
        long a = integer_value(inner_product(res[i], psi, HC), "restriction multiplicity");
        if (a < 0) throw Error("negative multiplicity in a restricted character");
        row.push_back(a);
      }
      A.push_back(std::move(row));
    }
  }
  const std::size_t R = A.size();
  // last variable touching each constraint, for early failure
  std::vector<long> last(R, -1);
  for (std::size_t k = 0; k < R; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (A[k][i]) last[k] = static_cast<long>(i);
  for (std::size_t k = 0; k < R; ++k)
    if (last[k] < 0 && b[k] != 0) return out;

  std::vector<long> m(n, 0), rem = b;
  std::function<void(std::size_t)> dfs = [&](std::size_t i) {
    if (out.size() >= limit) return;
    if (i == n) {
      for (auto x : rem)
        if (x) return;
      out.push_back(m);
      return;
    }
    long cap = -1;
    for (std::size_t k = 0; k < R; ++k)
      if (A[k][i]) {
        long c = rem[k] / A[k][i];
        cap = cap < 0 ? c : std::min(cap, c);
      }
    if (cap < 0) cap = 0;  // chi_i invisible to every subgroup: cannot be pinned, keep it at 0
    for (long v = 0; v <= cap; ++v) {
      m[i] = v;
      for (std::size_t k = 0; k < R; ++k) rem[k] -= v * A[k][i];
      bool ok = true;
      for (std::size_t k = 0; k < R && ok; ++k)
        if (last[k] == static_cast<long>(i) && rem[k] != 0) ok = false;
      if (ok) dfs(i + 1);
      for (std::size_t k = 0; k < R; ++k) rem[k] += v * A[k][i];
    }
    m[i] = 0;
  };
  dfs(0);
  return out;
}

// chi_k(g^j) = zeta_n^(jk) for cyclic_group(n); no class cap.
inline CharacterTable cyclic_character_table(const FiniteGroup& G) {
  const std::size_t n = G.order();
  for (Index a = 0; a < n; ++a)
    if (G.mul(a, n > 1 ? 1 : 0) != (a + 1) % n) throw InvalidInput(G.name() + " is not cyclic_group(" + std::to_string(n) + ")");
  auto cd = std::make_shared<const ClassData>(G);
  CharacterTable T{cd, static_cast<unsigned>(n), 0, {}};
  for (std::size_t k = 0; k < n; ++k) {
    ClassFunction row;
    for (const auto& c : cd->classes())
      row.push_back(CyclotomicElement::root_of_unity(static_cast<unsigned>(n), static_cast<long>(k * c.rep % n)));
    T.chi.push_back(std::move(row));
  }
  return T;
}

// Table for a subgroup, lifted to the parent's conductor.
inline SubgroupTable subgroup_table(const FiniteGroup& H, CharacterTable table, unsigned conductor) {
  SubgroupTable s{&H, std::move(table)};
  for (auto& row : s.table.chi) row = lift_values(row, conductor);
  s.table.conductor = conductor;
  return s;
}

inline SubgroupTable subgroup_table(const FiniteGroup& H, unsigned conductor) {
  return subgroup_table(H, character_table_dixon(H), conductor);
}

// Unique m >= 0 such that sum m_i chi_i + 1 restricts to the regular
// character on both G72 and the non-normal G^72.
inline std::vector<long> decompose_71(const CharacterTable& T) {
  const auto& G = build_g648();
  if (T.classes->group_name() != G.group.name() || T.group_order() != G.group.order())
    throw InvalidInput("decompose_71 needs the character table of G648");
  static const FiniteGroup g72 = G.group.subgroup(G.g72(), "G72");
  static const FiniteGroup gh72 = G.group.subgroup(G.ghat72(), "Ghat72");
  std::vector<SubgroupTable> subs{subgroup_table(g72, T.conductor), subgroup_table(gh72, T.conductor)};
  auto sols = find_regular_completions(T, subs, trivial_character(T), 2);
  if (sols.empty()) throw Error("decompose_71: no nonnegative combination restricts to the regular character");
  if (sols.size() > 1) throw Error("decompose_71: the regular-restriction condition has several solutions");
  return sols[0];
}

struct ClassCondition {
  std::string fingerprint;
  std::optional<CyclotomicElement> value;  // nullopt: value equals the degree
};

inline std::vector<std::size_t> select_characters_by_class_conditions(
    const CharacterTable& T, const std::vector<ClassCondition>& conds,
    const std::optional<std::vector<std::size_t>>& candidates = std::nullopt) {
  std::vector<std::size_t> cls;
  for (const auto& c : conds) cls.push_back(T.classes->find_class(c.fingerprint));
  std::vector<std::size_t> pool;
  if (candidates) pool = *candidates;
  else {
    pool.resize(T.size());
    std::iota(pool.begin(), pool.end(), 0);
  }
  std::vector<std::size_t> out;
  for (auto i : pool) {
    if (i >= T.size()) throw InvalidInput("candidate character index out of range");
    bool ok = true;
    for (std::size_t c = 0; c < conds.size() && ok; ++c) {
      CyclotomicElement want = conds[c].value ? lift_values({*conds[c].value}, T.conductor)[0] : T.chi[i][0];
      ok = T.chi[i][cls[c]] == want;
    }
    if (ok) out.push_back(i);
  }
  return out;
}

// ---- CSV ----------------------------------------------------------------
//
// # conductor 12, w = exp(2 pi i / 12)
// class,1,2,...
// rep,<element label>,...
// order,...
// size,...
// fingerprint,...
// chi_1,<value>,...

inline std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

inline std::string write_table_csv(const CharacterTable& T, const FiniteGroup& G) {
  const auto& C = *T.classes;
  std::ostringstream os;
  os << "# character table of " << C.group_name() << "; conductor " << T.conductor << ", w = exp(2 pi i / "
     << T.conductor << ")\n";
  auto line = [&](const std::string& head, auto&& cell) {
    os << head;
    for (std::size_t j = 0; j < C.count(); ++j) os << "," << csv_cell(cell(j));
    os << "\n";
  };
  line("class", [&](std::size_t j) { return std::to_string(j + 1); });
  line("rep", [&](std::size_t j) { return G.label(C[j].rep); });
  line("order", [&](std::size_t j) { return std::to_string(C[j].order); });
  line("size", [&](std::size_t j) { return std::to_string(C[j].size); });
  line("fingerprint", [&](std::size_t j) { return C.fingerprint(j).to_string(); });
  for (std::size_t i = 0; i < T.size(); ++i)
    line("chi_" + std::to_string(i + 1), [&](std::size_t j) { return T.chi[i][j].to_string(); });
  return os.str();
}

inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') out.back() += '"', ++i;
      else if (c == '"') quoted = false;
      else out.back() += c;
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back();
    } else {
      out.back() += c;
    }
  }
  return out;
}

// Columns are matched to the classes of G by representative label, so a
// table written by write_table_csv reads back with the group's own ClassData.
inline CharacterTable read_table_csv(const std::string& text, const FiniteGroup& G) {
  auto cd = std::make_shared<const ClassData>(G);
  std::map<std::string, Index> by_label;
  for (Index g = 0; g < G.order(); ++g) by_label[G.label(g)] = g;
  CharacterTable T{cd, 0, 0, {}};
  std::vector<std::size_t> col;  // csv column -> class index
  std::istringstream is(text);
  std::string line;
  std::size_t ln = 0;
  while (std::getline(is, line)) {
    ++ln;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      auto p = line.find("conductor ");
      if (p != std::string::npos) T.conductor = static_cast<unsigned>(std::stoul(line.substr(p + 10)));
      continue;
    }
    auto cells = split_csv(line);
    const std::string head = cells[0];
    cells.erase(cells.begin());
    if (head == "rep") {
      if (cells.size() != cd->count()) throw ParseError(ln, "expected " + std::to_string(cd->count()) + " classes");
      std::vector<bool> seen(cd->count(), false);
      for (const auto& c : cells) {
        auto it = by_label.find(c);
        if (it == by_label.end()) throw ParseError(ln, "unknown element '" + c + "'");
        std::size_t k = cd->class_of(it->second);
        if (seen[k]) throw ParseError(ln, "two columns in the same class");
        seen[k] = true;
        col.push_back(k);
      }
    } else if (head.rfind("chi_", 0) == 0) {
      if (col.empty()) throw ParseError(ln, "character row before the rep row");
      if (T.conductor == 0) throw ParseError(ln, "missing '# ... conductor N' header");
      if (cells.size() != col.size()) throw ParseError(ln, "wrong number of values");
      ClassFunction row(cd->count(), CyclotomicElement(T.conductor, Rational(0)));
      for (std::size_t j = 0; j < cells.size(); ++j) {
        try {
          row[col[j]] = CyclotomicElement::parse(T.conductor, cells[j], "w");
        } catch (const InvalidInput& e) {
          throw ParseError(ln, e.what());
        }
      }
      T.chi.push_back(std::move(row));
    }
  }
  if (T.chi.size() != cd->count()) throw InvalidInput("table has " + std::to_string(T.chi.size()) + " rows, expected " +
                                                      std::to_string(cd->count()));
  std::string why;
  if (!check_orthogonality(T, &why)) throw InvalidInput("table read from csv fails orthogonality: " + why);
  return T;
}

inline CharacterTable load_table_csv(const std::string& path, const FiniteGroup& G) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return read_table_csv(ss.str(), G);
}

// ---- comparison with a printed table --------------------------------------

// Whitespace-separated table: "classes <labels>" then "<name> <values>" rows.
// Labels start with the element order ("12a"); values are expressions in w.
struct LabelledTable {
  std::vector<std::string> labels;
  std::vector<std::string> names;
  std::vector<ClassFunction> rows;

  unsigned order(std::size_t j) const { return static_cast<unsigned>(std::stoul(labels[j])); }

  // |C_j| from column orthogonality
  Rational class_size(std::size_t j, std::size_t group_order) const {
    CyclotomicElement s = rows[0][j].zero_like();
    for (const auto& r : rows) s = s + r[j] * r[j].conj();
    return Rational(static_cast<long>(group_order)) / s.rational_value();
  }
};

inline LabelledTable parse_labelled_table(const std::string& text, unsigned conductor, const std::string& var = "w") {
  LabelledTable t;
  std::istringstream is(text);
  std::string line;
  std::size_t ln = 0;
  while (std::getline(is, line)) {
    ++ln;
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head) || head[0] == '#') continue;
    std::vector<std::string> toks;
    for (std::string tok; ls >> tok;) toks.push_back(tok);
    if (head == "classes") {
      for (const auto& l : toks)
        if (l.empty() || !std::isdigit(static_cast<unsigned char>(l[0])))
          throw ParseError(ln, "class label must start with the element order: " + l);
      t.labels = toks;
      continue;
    }
    if (t.labels.empty()) throw ParseError(ln, "row before the classes line");
    if (toks.size() != t.labels.size()) throw ParseError(ln, "wrong number of values");
    ClassFunction row;
    for (const auto& tok : toks) {
      try {
        row.push_back(tok == "." ? CyclotomicElement(conductor, Rational(0))
                                 : CyclotomicElement::parse(conductor, tok, var));
      } catch (const InvalidInput& e) {
        throw ParseError(ln, e.what());
      }
    }
    t.names.push_back(head);
    t.rows.push_back(std::move(row));
  }
  return t;
}

struct TableMatch {
  std::vector<std::size_t> rows;  // rows[i]: row of the computed table matching printed row i
  std::vector<std::size_t> cols;  // cols[j]: class matching printed column j
};

namespace detail {

inline bool bipartite_complete(const std::vector<std::uint64_t>& cand, std::vector<std::size_t>* assign = nullptr) {
  const std::size_t n = cand.size();
  std::vector<long> owner(64, -1);
  std::function<bool(std::size_t, std::uint64_t&)> aug = [&](std::size_t j, std::uint64_t& seen) {
    for (std::size_t c = 0; c < 64; ++c) {
      if (!(cand[j] >> c & 1) || (seen >> c & 1)) continue;
      seen |= std::uint64_t(1) << c;
      if (owner[c] < 0 || aug(static_cast<std::size_t>(owner[c]), seen)) {
        owner[c] = static_cast<long>(j);
        return true;
      }
    }
    return false;
  };
  for (std::size_t j = 0; j < n; ++j) {
    std::uint64_t seen = 0;
    if (!aug(j, seen)) return false;
  }
  if (assign) {
    assign->assign(n, 0);
    for (std::size_t c = 0; c < 64; ++c)
      if (owner[c] >= 0) (*assign)[static_cast<std::size_t>(owner[c])] = c;
  }
  return true;
}

}  // namespace detail

// Row and column bijections carrying the printed table onto T. Printed
// columns may only go to classes with the same element order and size.
inline std::optional<TableMatch> match_tables(const LabelledTable& P, const CharacterTable& T) {
  const std::size_t r = T.size();
  if (P.rows.size() != r || P.labels.size() != r) return std::nullopt;
  if (r > kMaxClasses) throw InvalidInput("match_tables: more than 64 classes");
  const auto& C = *T.classes;
  std::map<std::string, int> ids;
  auto id = [&](const CyclotomicElement& v) { return ids.emplace(v.to_string(), static_cast<int>(ids.size())).first->second; };
  std::vector<std::vector<int>> a(r), b(r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      a[i].push_back(id(P.rows[i][j].lift_to(T.conductor)));
      b[i].push_back(id(T.chi[i][j]));
    }
  std::vector<std::uint64_t> cand(r, 0);
  for (std::size_t j = 0; j < r; ++j) {
    Rational sz = P.class_size(j, C.group_order());
    for (std::size_t c = 0; c < r; ++c)
      if (C[c].order == P.order(j) && Rational(static_cast<long>(C[c].size)) == sz) cand[j] |= std::uint64_t(1) << c;
  }
  if (!detail::bipartite_complete(cand)) return std::nullopt;

  auto sorted = [](std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  std::vector<std::vector<std::size_t>> row_cand(r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < r; ++k)
      if (sorted(a[i]) == sorted(b[k])) row_cand[i].push_back(k);
  std::vector<std::size_t> order(r);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return row_cand[x].size() < row_cand[y].size(); });

  TableMatch M{std::vector<std::size_t>(r), {}};
  std::vector<bool> used(r, false);
  std::function<bool(std::size_t, const std::vector<std::uint64_t>&)> go = [&](std::size_t t,
                                                                                const std::vector<std::uint64_t>& cs) {
    if (t == r) return detail::bipartite_complete(cs, &M.cols);
    std::size_t i = order[t];
    for (auto k : row_cand[i]) {
      if (used[k]) continue;
      std::vector<std::uint64_t> next(cs);
      bool ok = true;
      for (std::size_t j = 0; j < r && ok; ++j) {
        std::uint64_t keep = 0;
        for (std::size_t c = 0; c < r; ++c)
          if ((next[j] >> c & 1) && b[k][c] == a[i][j]) keep |= std::uint64_t(1) << c;
        next[j] = keep;
        ok = keep != 0;
      }
      if (!ok || !detail::bipartite_complete(next)) continue;
      used[k] = true;
      M.rows[i] = k;
      if (go(t + 1, next)) return true;
      used[k] = false;
    }
    return false;
  };
  if (!go(0, cand)) return std::nullopt;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      if (a[i][j] != b[M.rows[i]][M.cols[j]]) return std::nullopt;
  return M;
}

inline LabelledTable conjugate(LabelledTable t) {
  for (auto& row : t.rows)
    for (auto& v : row) v = v.conj();
  return t;
}

struct PrintedMatch {
  TableMatch match;
  bool conjugated = false;  // matched after w <-> w^2
};

// Match a printed table against a computed one, allowing the field automorphism.
inline std::optional<PrintedMatch> match_printed(const LabelledTable& P, const CharacterTable& T) {
  if (auto m = match_tables(P, T)) return PrintedMatch{*m, false};
  if (auto m = match_tables(conjugate(P), T)) return PrintedMatch{*m, true};
  return std::nullopt;
}

}  // namespace fppkit::grouprep
