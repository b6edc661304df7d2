#pragma once

// Directed graphs and the chromatic quasisymmetric function X_G(x,t).

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "poset.hpp"
#include "qsym.hpp"

namespace qsymtree {

class Digraph {
public:
  Digraph() = default;

  Digraph(int n, std::vector<std::pair<int, int>> arcs) : n_(n) {
    if (n < 0 || n > kMaxPosetSize) throw std::invalid_argument("digraph size out of range");
    out_.assign(n, 0);
    in_.assign(n, 0);
    for (auto [u, v] : arcs) {
      if (u < 0 || v < 0 || u >= n || v >= n) {
        throw std::invalid_argument("arc " + std::to_string(u + 1) + " " + std::to_string(v + 1) + " out of range");
      }
      if (u == v) throw std::invalid_argument("self-loop at " + std::to_string(u + 1));
      if (out_[u] & bit(v)) {
        throw std::invalid_argument("repeated arc " + std::to_string(u + 1) + " " + std::to_string(v + 1));
      }
      out_[u] |= bit(v);
      in_[v] |= bit(u);
    }
    std::sort(arcs.begin(), arcs.end());
    arcs_ = std::move(arcs);
  }

  int size() const noexcept { return n_; }
  const std::vector<std::pair<int, int>>& arcs() const noexcept { return arcs_; }
  Mask out(int v) const { return out_[v]; }
  Mask in(int v) const { return in_[v]; }
  Mask neighbors(int v) const { return out_[v] | in_[v]; }
  bool has_arc(int u, int v) const { return (out_[u] >> v) & 1U; }

  friend bool operator==(const Digraph& a, const Digraph& b) { return a.n_ == b.n_ && a.arcs_ == b.arcs_; }

private:
  int n_ = 0;
  std::vector<std::pair<int, int>> arcs_;
  std::vector<Mask> out_, in_;
};

inline Digraph reverse(const Digraph& g) {
  std::vector<std::pair<int, int>> arcs;
  for (auto [u, v] : g.arcs()) arcs.push_back({v, u});
  return {g.size(), std::move(arcs)};
}

inline bool is_acyclic(const Digraph& g) {
  std::vector<int> indeg(g.size());
  for (auto [u, v] : g.arcs()) ++indeg[v];
  std::vector<int> ready;
  for (int v = 0; v < g.size(); ++v)
    if (indeg[v] == 0) ready.push_back(v);
  int seen = 0;
  while (!ready.empty()) {
    int v = ready.back();
    ready.pop_back();
    ++seen;
    for (Mask r = g.out(v); r; r &= r - 1) {
      int w = std::countr_zero(r);
      if (--indeg[w] == 0) ready.push_back(w);
    }
  }
  return seen == g.size();
}

/// Underlying undirected graph is a tree (antiparallel pairs count twice).
inline bool is_directed_tree(const Digraph& g) {
  if (g.size() == 0 || static_cast<int>(g.arcs().size()) != g.size() - 1) return false;
  Mask seen = 1;
  std::vector<int> stack{0};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (Mask r = g.neighbors(v) & ~seen; r; r &= r - 1) {
      int w = std::countr_zero(r);
      seen |= bit(w);
      stack.push_back(w);
    }
  }
  return std::popcount(seen) == g.size();
}

/// Polynomial in t with M-basis coefficients.
class TQSymPoly {
public:
  const std::map<int, QSymExpr>& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  int t_degree() const { return coeffs_.empty() ? -1 : coeffs_.rbegin()->first; }

  QSymExpr coeff(int j) const {
    auto it = coeffs_.find(j);
    return it == coeffs_.end() ? QSymExpr(Basis::M) : it->second;
  }

  void add(int j, const QSymExpr& f) {
    detail::require_basis(f, Basis::M, "TQSymPoly");
    auto [it, inserted] = coeffs_.try_emplace(j, f);
    if (!inserted) it->second += f;
    if (it->second.is_zero()) coeffs_.erase(it);
  }

  /// Coefficient of M_alpha as a polynomial in t.
  QPolynomial of(const Composition& alpha) const {
    QPolynomial p;
    for (const auto& [j, f] : coeffs_) p.add_term(j, f.coeff(alpha));
    return p;
  }

  std::set<Composition> support() const {
    std::set<Composition> s;
    for (const auto& [j, f] : coeffs_)
      for (const auto& [a, c] : f.terms()) s.insert(a);
    return s;
  }

  friend bool operator==(const TQSymPoly& a, const TQSymPoly& b) { return a.coeffs_ == b.coeffs_; }

  friend TQSymPoly operator*(const TQSymPoly& a, const TQSymPoly& b) {
    TQSymPoly r;
    for (const auto& [i, f] : a.coeffs_)
      for (const auto& [j, g] : b.coeffs_) r.add(i + j, multiply(f, g));
    return r;
  }

  nlohmann::json to_json() const {
    nlohmann::json c = nlohmann::json::object();
    for (const auto& [j, f] : coeffs_) c[std::to_string(j)] = f.to_json();
    return {{"coeffs", c}};
  }

  static TQSymPoly from_json(const nlohmann::json& j) {
    TQSymPoly p;
    for (const auto& [k, v] : j.at("coeffs").items()) p.add(std::stoi(k), QSymExpr::from_json(v));
    return p;
  }

  /// Grouped by composition, e.g. "(2+2t+2t²)·M[1,1,1] + t²·M[2,1] + M[1,2]".
  /// Terms are ordered by top t-degree (descending), then by composition.
  std::string to_string() const {
    if (coeffs_.empty()) return "0";
    std::vector<std::pair<Composition, QPolynomial>> rows;
    for (const auto& a : support()) rows.push_back({a, of(a)});
    std::stable_sort(rows.begin(), rows.end(),
                     [](const auto& x, const auto& y) { return x.second.degree() > y.second.degree(); });
    std::string s;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& [a, poly] = rows[i];
      QPolynomial shown = poly;
      bool negative = poly.coeffs().size() == 1 && poly.coeffs().begin()->second < 0;
      if (negative) shown = poly.scaled(-1);
      if (i > 0) s += negative ? " - " : " + ";
      else if (negative) s += "-";
      std::string c = render_t(shown);
      if (shown.coeffs().size() > 1) s += "(" + c + ")·";
      else if (c != "1") s += c + "·";
      s += "M" + a.to_string();
    }
    return s;
  }

private:
  static std::string superscript(int e) {
    static const char* digits[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};
    std::string s;
    for (char ch : std::to_string(e)) s += digits[ch - '0'];
    return s;
  }

  static std::string render_t(const QPolynomial& p) {
    std::string s;
    bool first = true;
    for (const auto& [e, c] : p.coeffs()) {
      Integer a = abs(c);
      if (!first) s += c < 0 ? "-" : "+";
      else if (c < 0) s += "-";
      first = false;
      if (e == 0) {
        s += a.get_str();
        continue;
      }
      if (a != 1) s += a.get_str();
      s += "t";
      if (e > 1) s += superscript(e);
    }
    return s;
  }

  std::map<int, QSymExpr> coeffs_;
};

inline constexpr int kChromaticGuardN = 9;

/// Sum over ordered partitions (B_1, ..., B_k) of V into independent sets of
/// t^{#arcs from an earlier block to a later one} M_{(|B_1|, ..., |B_k|)}.
/// Computed by DP on the set of vertices already placed.
inline TQSymPoly chromatic_qsym_t(const Digraph& g) {
  const int n = g.size();
  guard::check(n, guard::max_n(kChromaticGuardN), "chromatic_qsym_t");
  using Table = std::map<std::pair<int, std::vector<int>>, Integer>;  // (asc, parts) -> count
  const Mask all = n == 64 ? ~Mask{0} : bit(n) - 1;
  std::vector<bool> independent(std::size_t{1} << n, true);
  for (Mask b = 1; b <= all; ++b) {
    int v = std::countr_zero(b);
    Mask rest = b & (b - 1);
    independent[b] = independent[rest] && !(g.neighbors(v) & rest);
  }
  std::vector<Table> memo(std::size_t{1} << n);
  std::vector<bool> done(std::size_t{1} << n, false);
  auto rec = [&](auto&& self, Mask used) -> const Table& {
    if (done[used]) return memo[used];
    Table& out = memo[used];
    Mask free = all & ~used;
    if (free == 0) {
      out[{0, {}}] = 1;
    } else {
      for (Mask b = free; b; b = (b - 1) & free) {
        if (!independent[b]) continue;
        int asc = 0;
        for (Mask r = b; r; r &= r - 1) asc += std::popcount(g.in(std::countr_zero(r)) & used);
        int size = std::popcount(b);
        for (const auto& [key, c] : self(self, used | b)) {
          std::vector<int> parts{size};
          parts.insert(parts.end(), key.second.begin(), key.second.end());
          out[{key.first + asc, std::move(parts)}] += c;
        }
      }
    }
    done[used] = true;
    return out;
  };
  TQSymPoly x;
  std::map<int, QSymExpr> by_t;
  for (const auto& [key, c] : rec(rec, 0)) {
    auto [it, inserted] = by_t.try_emplace(key.first, Basis::M);
    it->second.add_term(Composition(key.second), c);
  }
  for (const auto& [j, f] : by_t) x.add(j, f);
  return x;
}

/// X_G(x, 1), in the M basis.
inline QSymExpr chromatic_sym(const Digraph& g) {
  QSymExpr s(Basis::M);
  const TQSymPoly x = chromatic_qsym_t(g);
  for (const auto& [j, f] : x.coeffs()) s += f;
  return s;
}

/// Proper colourings with k colours: M_alpha(1^k) = C(k, l(alpha)).
inline Integer chromatic_poly(const Digraph& g, int k) {
  Integer total = 0;
  const QSymExpr x = chromatic_sym(g);
  for (const auto& [a, c] : x.terms()) {
    Integer b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(k), a.length());
    total += c * b;
  }
  return total;
}

/// Reachability order of a DAG as a poset with every cover strict.
inline LabeledPoset dag_to_poset(const Digraph& g) {
  if (!is_acyclic(g)) throw DomainError("digraph has a directed cycle");
  const int n = g.size();
  std::vector<Mask> reach(n, 0);  // strictly reachable
  bool changed = true;
  for (int v = 0; v < n; ++v) reach[v] = g.out(v);
  while (changed) {
    changed = false;
    for (int v = 0; v < n; ++v) {
      Mask r = reach[v];
      for (Mask t = reach[v]; t; t &= t - 1) r |= reach[std::countr_zero(t)];
      if (r != reach[v]) {
        reach[v] = r;
        changed = true;
      }
    }
  }
  std::vector<Cover> covers;
  for (auto [u, v] : g.arcs()) {
    bool implied = false;
    for (Mask t = reach[u] & ~bit(v); t && !implied; t &= t - 1) implied = (reach[std::countr_zero(t)] >> v) & 1U;
    if (!implied) covers.push_back({u, v, Strictness::Strict});
  }
  return {n, std::move(covers)};
}

/// Coefficient of the top power of t; on a DAG every arc can ascend.
inline QSymExpr top_t_coefficient(const Digraph& g) {
  if (!is_acyclic(g)) throw DomainError("digraph has a directed cycle");
  TQSymPoly x = chromatic_qsym_t(g);
  return x.coeff(x.t_degree());
}

/// Whether each M_alpha and M_{alpha^rev} carry the same t-polynomial. This
/// suffices for X_G = X_{reverse(G)}; it is not claimed to be necessary.
inline bool reversal_invariance_check(const Digraph& g) {
  TQSymPoly x = chromatic_qsym_t(g);
  for (const auto& a : x.support()) {
    if (!(x.of(a) == x.of(a.reversed()))) return false;
  }
  return true;
}

}  // namespace qsymtree
