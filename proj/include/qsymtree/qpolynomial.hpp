#pragma once

#include <gmpxx.h>

#include <map>
#include <string>

#include "json.hpp"

namespace qsymtree {

using Integer = mpz_class;

/// Integer polynomial in one variable q, stored sparsely by exponent.
class QPolynomial {
public:
  QPolynomial() = default;

  static QPolynomial monomial(int exponent, const Integer& c = 1) {
    QPolynomial p;
    p.add_term(exponent, c);
    return p;
  }

  const std::map<int, Integer>& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  int degree() const { return coeffs_.empty() ? -1 : coeffs_.rbegin()->first; }

  Integer coeff(int exponent) const {
    auto it = coeffs_.find(exponent);
    return it == coeffs_.end() ? Integer(0) : it->second;
  }

  void add_term(int exponent, const Integer& c) {
    if (c == 0) return;
    auto [it, inserted] = coeffs_.try_emplace(exponent, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) coeffs_.erase(it);
    }
  }

  QPolynomial& operator+=(const QPolynomial& o) {
    for (const auto& [e, c] : o.coeffs_) add_term(e, c);
    return *this;
  }

  friend QPolynomial operator+(QPolynomial a, const QPolynomial& b) { return a += b; }

  friend QPolynomial operator*(const QPolynomial& a, const QPolynomial& b) {
    QPolynomial r;
    for (const auto& [ea, ca] : a.coeffs_) {
      for (const auto& [eb, cb] : b.coeffs_) r.add_term(ea + eb, ca * cb);
    }
    return r;
  }

  QPolynomial scaled(const Integer& c) const {
    QPolynomial r;
    if (c == 0) return r;
    for (const auto& [e, v] : coeffs_) r.coeffs_.emplace(e, v * c);
    return r;
  }

  friend bool operator==(const QPolynomial& a, const QPolynomial& b) { return a.coeffs_ == b.coeffs_; }

  /// e.g. "q^4 + 2q^5 - q^7"; "0" for the zero polynomial.
  std::string to_string(const char* var = "q") const {
    if (coeffs_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [e, c] : coeffs_) {
      Integer a = abs(c);
      if (first) {
        if (c < 0) s += "-";
      } else {
        s += c < 0 ? " - " : " + ";
      }
      first = false;
      if (e == 0) {
        s += a.get_str();
        continue;
      }
      if (a != 1) s += a.get_str();
      s += var;
      if (e != 1) s += "^" + std::to_string(e);
    }
    return s;
  }

  nlohmann::json to_json() const {
    nlohmann::json c = nlohmann::json::object();
    for (const auto& [e, v] : coeffs_) c[std::to_string(e)] = v.get_str();
    return nlohmann::json{{"coeffs", c}};
  }

  static QPolynomial from_json(const nlohmann::json& j) {
    QPolynomial p;
    for (const auto& [k, v] : j.at("coeffs").items()) {
      p.add_term(std::stoi(k), Integer(v.get<std::string>()));
    }
    return p;
  }

private:
  std::map<int, Integer> coeffs_;
};

}  // namespace qsymtree
