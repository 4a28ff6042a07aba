#pragma once

#include <fstream>
#include <sstream>
#include <variant>

#include "fppkit/exact/cyclotomic.hpp"
#include "fppkit/grouprep/group.hpp"
#include "fppkit/mpoly/matrix.hpp"

namespace fppkit::geom {

using exact::CyclotomicElement;
using exact::Rational;
using mpoly::DenseMatrix;

template <class C>
std::size_t find_matrix(const std::vector<DenseMatrix<C>>& mats, const DenseMatrix<C>& m) {
  for (std::size_t i = 0; i < mats.size(); ++i)
    if (mats[i] == m) return i;
  return mats.size();
}

// The abstract group spanned by a closed list of matrices, with element i
// of the result equal to mats[order[i]] (identity first).
template <class C>
grouprep::FiniteGroup matrix_group(const std::vector<DenseMatrix<C>>& mats, std::vector<std::size_t>* order = nullptr) {
  if (mats.empty()) throw InvalidInput("empty representation");
  const std::size_t n = mats.size(), d = mats[0].rows();
  for (const auto& m : mats)
    if (m.rows() != d || m.cols() != d) throw InvalidInput("representation matrices must be square of one size");
  for (std::size_t i = 0; i < n; ++i)
    if (find_matrix(mats, mats[i]) != i) throw InvalidInput("representation lists a matrix twice");
  auto id = DenseMatrix<C>::identity(d, mats[0].proto());
  std::size_t e = find_matrix(mats, id);
  if (e == n) throw InvalidInput("representation does not contain the identity");
  std::vector<std::size_t> ord{e};
  for (std::size_t i = 0; i < n; ++i)
    if (i != e) ord.push_back(i);
  std::vector<std::size_t> pos(n);
  for (std::size_t i = 0; i < n; ++i) pos[ord[i]] = i;
  std::vector<std::vector<grouprep::Index>> t(n, std::vector<grouprep::Index>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t k = find_matrix(mats, mats[ord[i]] * mats[ord[j]]);
      if (k == n) throw InvalidInput("representation is not closed under multiplication");
      t[i][j] = static_cast<grouprep::Index>(pos[k]);
    }
  if (order) *order = ord;
  return grouprep::FiniteGroup("rep", std::move(t));
}

// P = (1/|G|) sum rho(g). Closure (hence invertibility) is checked first.
template <class C>
DenseMatrix<C> reynolds_project(const std::vector<DenseMatrix<C>>& mats) {
  using R = exact::RingTraits<C>;
  matrix_group(mats);
  const auto& proto = mats[0].proto();
  DenseMatrix<C> P(mats[0].rows(), mats[0].cols(), proto);
  for (const auto& m : mats) P = P + m;
  return P.scaled(R::from_rational(proto, Rational(1, static_cast<long>(mats.size()))));
}

// Matrix file: optional "ring qq" / "ring cyc:N" line, then matrices as
// whitespace-separated rows, one blank line between matrices.
using AnyRep = std::variant<std::vector<DenseMatrix<Rational>>, std::vector<DenseMatrix<CyclotomicElement>>>;

inline AnyRep parse_representation(const std::string& text) {
  unsigned conductor = 0;
  std::vector<std::vector<std::vector<std::string>>> blocks(1);
  std::istringstream is(text);
  std::string line;
  std::size_t ln = 0;
  while (std::getline(is, line)) {
    ++ln;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::vector<std::string> toks;
    for (std::string t; ls >> t;) toks.push_back(t);
    if (toks.empty()) {
      if (!blocks.back().empty()) blocks.emplace_back();
      continue;
    }
    if (toks[0] == "ring") {
      if (toks.size() != 2) throw ParseError(ln, "expected 'ring qq' or 'ring cyc:N'");
      if (toks[1] == "qq") conductor = 0;
      else if (toks[1].rfind("cyc:", 0) == 0) conductor = static_cast<unsigned>(std::stoul(toks[1].substr(4)));
      else throw ParseError(ln, "unknown ring " + toks[1]);
      continue;
    }
    blocks.back().push_back(toks);
  }
  if (blocks.back().empty()) blocks.pop_back();
  if (blocks.empty()) throw InvalidInput("no matrices in representation file");
  auto build = [&](auto proto, auto parse) {
    using C = decltype(proto);
    std::vector<DenseMatrix<C>> out;
    for (const auto& b : blocks) {
      std::vector<std::vector<C>> rows;
      for (const auto& r : b) {
        std::vector<C> row;
        for (const auto& t : r) row.push_back(parse(t));
        rows.push_back(std::move(row));
      }
      auto m = DenseMatrix<C>::from_rows(rows, proto);
      if (m.rows() != m.cols()) throw InvalidInput("representation matrix is not square");
      out.push_back(std::move(m));
    }
    return out;
  };
  if (conductor == 0)
    return build(Rational(0), [](const std::string& t) {
      try {
        Rational q(t);
        if (q.get_den() == 0) throw std::invalid_argument(t);
        q.canonicalize();
        return q;
      } catch (const std::invalid_argument&) {
        throw InvalidInput("bad rational entry '" + t + "'");
      }
    });
  return build(CyclotomicElement(conductor, Rational(0)),
               [conductor](const std::string& t) { return CyclotomicElement::parse(conductor, t, "w"); });
}

inline AnyRep load_representation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_representation(ss.str());
}

}  // namespace fppkit::geom
