#pragma once

#include <algorithm>
#include <string>
#include <tuple>
#include <vector>

#include "fppkit/grouprep/group.hpp"

namespace fppkit::grouprep {

struct ConjugacyClass {
  Index rep = 0;  // smallest element index in the class
  std::size_t size = 0;
  unsigned order = 1;
  std::vector<Index> elements;
};

// Intrinsic class label: element order, class size and, for each prime p
// dividing |G|, the order and size of the p-th power class and whether the
// p-th power map fixes the class.
struct Fingerprint {
  unsigned order = 1;
  std::size_t size = 1;
  struct PowerImage {
    unsigned prime;
    unsigned order;
    std::size_t size;
    bool fixed;
    auto key() const { return std::tie(prime, order, size, fixed); }
    bool operator==(const PowerImage& o) const { return key() == o.key(); }
  };
  std::vector<PowerImage> powers;

  bool operator==(const Fingerprint& o) const { return order == o.order && size == o.size && powers == o.powers; }

  std::string to_string() const {
    std::string s = "o" + std::to_string(order) + "s" + std::to_string(size);
    for (const auto& p : powers)
      s += "^" + std::to_string(p.prime) + (p.fixed ? "=" : ">") + "o" + std::to_string(p.order) + "s" +
           std::to_string(p.size);
    return s;
  }

  // "o3s8" matches any class with that order and size; the full form
  // (as printed by to_string) must match exactly.
  bool matches(const std::string& pattern) const {
    auto full = to_string();
    if (pattern == full) return true;
    return pattern.find('^') == std::string::npos && full.rfind(pattern + "^", 0) == 0;
  }
};

class ClassData {
 public:
  explicit ClassData(const FiniteGroup& G)
      : group_name_(G.name()), group_order_(G.order()), exponent_(G.exponent()) {
    class_of_.assign(G.order(), static_cast<std::size_t>(-1));
    std::vector<ConjugacyClass> raw;
    for (Index g = 0; g < G.order(); ++g) {
      if (class_of_[g] != static_cast<std::size_t>(-1)) continue;
      ConjugacyClass c;
      std::vector<bool> seen(G.order(), false);
      for (Index h = 0; h < G.order(); ++h) {
        Index x = G.conj(g, h);
        if (!seen[x]) {
          seen[x] = true;
          c.elements.push_back(x);
        }
      }
      std::sort(c.elements.begin(), c.elements.end());
      c.rep = c.elements.front();
      c.size = c.elements.size();
      c.order = G.element_order(c.rep);
      for (auto x : c.elements) class_of_[x] = raw.size();
      raw.push_back(std::move(c));
    }
    // canonical order: element order, then size, then representative
    std::vector<std::size_t> perm(raw.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
      return std::tie(raw[a].order, raw[a].size, raw[a].rep) < std::tie(raw[b].order, raw[b].size, raw[b].rep);
    });
    std::vector<std::size_t> where(raw.size());
    for (std::size_t i = 0; i < perm.size(); ++i) {
      where[perm[i]] = i;
      classes_.push_back(std::move(raw[perm[i]]));
    }
    for (auto& c : class_of_) c = where[c];
    inverse_.resize(classes_.size());
    for (std::size_t i = 0; i < classes_.size(); ++i) inverse_[i] = class_of_[G.inv(classes_[i].rep)];
    // class of g^k for every k mod exponent
    power_.assign(classes_.size(), std::vector<std::size_t>(exponent_));
    for (std::size_t i = 0; i < classes_.size(); ++i)
      for (unsigned k = 0; k < exponent_; ++k) power_[i][k] = class_of_[G.pow(classes_[i].rep, k)];
    for (unsigned p = 2; p <= group_order_; ++p)
      if (group_order_ % p == 0 && is_small_prime(p)) primes_.push_back(p);
    for (std::size_t i = 0; i < classes_.size(); ++i) {
      Fingerprint f{classes_[i].order, classes_[i].size, {}};
      for (auto p : primes_) {
        std::size_t j = power_[i][p % exponent_];
        f.powers.push_back({p, classes_[j].order, classes_[j].size, j == i});
      }
      fingerprints_.push_back(std::move(f));
    }
  }

  const std::string& group_name() const { return group_name_; }
  std::size_t group_order() const { return group_order_; }
  unsigned exponent() const { return exponent_; }
  std::size_t count() const { return classes_.size(); }
  const std::vector<ConjugacyClass>& classes() const { return classes_; }
  const ConjugacyClass& operator[](std::size_t i) const { return classes_[i]; }
  std::size_t class_of(Index g) const { return class_of_[g]; }
  std::size_t inverse_class(std::size_t i) const { return inverse_[i]; }
  std::size_t power_class(std::size_t i, long k) const {
    long e = static_cast<long>(exponent_);
    return power_[i][static_cast<std::size_t>(((k % e) + e) % e)];
  }
  const std::vector<unsigned>& primes() const { return primes_; }
  const Fingerprint& fingerprint(std::size_t i) const { return fingerprints_[i]; }

  // Unique class matching the pattern; InvalidInput listing candidates otherwise.
  std::size_t find_class(const std::string& pattern) const {
    std::vector<std::size_t> hits;
    for (std::size_t i = 0; i < count(); ++i)
      if (fingerprints_[i].matches(pattern)) hits.push_back(i);
    if (hits.size() == 1) return hits[0];
    std::string msg = hits.empty() ? "no class matches '" + pattern + "'"
                                   : "fingerprint '" + pattern + "' is ambiguous; candidates:";
    for (auto h : hits) msg += " " + fingerprints_[h].to_string();
    throw InvalidInput(msg);
  }

 private:
  static bool is_small_prime(unsigned p) {
    for (unsigned d = 2; d * d <= p; ++d)
      if (p % d == 0) return false;
    return true;
  }

  std::string group_name_;
  std::size_t group_order_;
  unsigned exponent_;
  std::vector<ConjugacyClass> classes_;
  std::vector<std::size_t> class_of_;
  std::vector<std::size_t> inverse_;
  std::vector<std::vector<std::size_t>> power_;
  std::vector<unsigned> primes_;
  std::vector<Fingerprint> fingerprints_;
};

}  // namespace fppkit::grouprep
