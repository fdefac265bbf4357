#include "gfre/gfpoly.hpp"

#include <algorithm>
#include <iterator>

namespace gfre {

Monomial::Monomial(std::vector<VarId> vars) : vars_(std::move(vars)) {
  std::sort(vars_.begin(), vars_.end());
  vars_.erase(std::unique(vars_.begin(), vars_.end()), vars_.end());
  rehash();
}

Monomial::Monomial(Sorted, std::vector<VarId> vars) : vars_(std::move(vars)) { rehash(); }

void Monomial::rehash() noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ULL ^ vars_.size();
  for (VarId v : vars_) {
    h ^= v.value + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h *= 0xff51afd7ed558ccdULL;
  }
  hash_ = h ^ (h >> 32);
}

bool Monomial::contains(VarId v) const { return std::binary_search(vars_.begin(), vars_.end(), v); }

Monomial Monomial::without(VarId v) const {
  std::vector<VarId> rest;
  rest.reserve(vars_.size());
  std::copy_if(vars_.begin(), vars_.end(), std::back_inserter(rest), [v](VarId x) { return x != v; });
  return Monomial(Sorted{}, std::move(rest));
}

Monomial Monomial::operator*(const Monomial& other) const {
  std::vector<VarId> merged;
  merged.reserve(vars_.size() + other.vars_.size());
  std::set_union(vars_.begin(), vars_.end(), other.vars_.begin(), other.vars_.end(), std::back_inserter(merged));
  return Monomial(Sorted{}, std::move(merged));
}

Poly2::Poly2(std::initializer_list<Monomial> terms) {
  for (const auto& m : terms) toggle(m);
}

void Poly2::toggle(const Monomial& m) {
  auto [it, inserted] = terms_.insert(m);
  if (!inserted) terms_.erase(it);
}

void Poly2::toggle(Monomial&& m) {
  auto [it, inserted] = terms_.insert(std::move(m));
  if (!inserted) terms_.erase(it);
}

Poly2& Poly2::operator+=(const Poly2& other) {
  if (this == &other) {
    terms_.clear();
    return *this;
  }
  for (const auto& m : other.terms_) toggle(m);
  return *this;
}

Poly2 operator*(const Poly2& p, const Poly2& q) {
  Poly2 r;
  for (const auto& x : p.terms_) {
    for (const auto& y : q.terms_) r.toggle(x * y);
  }
  return r;
}

std::vector<Monomial> Poly2::sorted() const {
  std::vector<Monomial> out(terms_.begin(), terms_.end());
  std::sort(out.begin(), out.end());
  return out;
}

Poly2 gate_to_poly(GateKind kind, std::span<const Poly2> inputs) {
  const std::size_t arity = gate_arity(kind);
  const bool ok = arity == 2 ? inputs.size() >= 2 : inputs.size() == arity;
  if (!ok) {
    throw Error("gate " + std::string(to_string(kind)) + " cannot take " + std::to_string(inputs.size()) +
                " inputs");
  }
  auto fold = [&](auto&& op) {
    Poly2 acc = inputs[0];
    for (std::size_t k = 1; k < inputs.size(); ++k) acc = op(acc, inputs[k]);
    return acc;
  };
  auto conj = [](const Poly2& x, const Poly2& y) { return x * y; };
  auto disj = [](const Poly2& x, const Poly2& y) { return x + y + x * y; };
  auto exor = [](const Poly2& x, const Poly2& y) { return x + y; };
  switch (kind) {
    case GateKind::Not: return Poly2::one() + inputs[0];
    case GateKind::Buf: return inputs[0];
    case GateKind::And: return fold(conj);
    case GateKind::Or: return fold(disj);
    case GateKind::Xor: return fold(exor);
    case GateKind::Nand: return Poly2::one() + fold(conj);
    case GateKind::Nor: return Poly2::one() + fold(disj);
    case GateKind::Xnor: return Poly2::one() + fold(exor);
    case GateKind::Const0: return Poly2::zero();
    case GateKind::Const1: return Poly2::one();
  }
  return {};
}

Poly2 substitute(const Poly2& f, VarId v, const Poly2& g) {
  Poly2 result;
  std::vector<Monomial> hits;
  for (const auto& m : f.terms()) {
    if (m.contains(v)) {
      hits.push_back(m.without(v));
    } else {
      result.toggle(m);
    }
  }
  for (const auto& rest : hits) {
    for (const auto& t : g.terms()) result.toggle(rest * t);
  }
  return result;
}

bool evaluate(const Poly2& f, const Assignment& assignment) {
  bool acc = false;
  for (const auto& m : f.terms()) {
    bool prod = true;
    for (VarId v : m.vars()) {
      auto it = assignment.find(v);
      if (it == assignment.end()) throw Error("variable " + std::to_string(v.value) + " has no assigned value");
      prod = prod && it->second;
    }
    acc ^= prod;
  }
  return acc;
}

std::string to_string(const Poly2& f, const std::function<std::string(VarId)>& name) {
  if (f.is_zero()) return "0";
  std::vector<std::vector<std::string>> rendered;
  rendered.reserve(f.size());
  for (const auto& m : f.terms()) {
    std::vector<std::string> names;
    names.reserve(m.degree());
    for (VarId v : m.vars()) names.push_back(name(v));
    std::sort(names.begin(), names.end());
    rendered.push_back(std::move(names));
  }
  std::sort(rendered.begin(), rendered.end());
  std::string out;
  for (std::size_t k = 0; k < rendered.size(); ++k) {
    if (k) out += " + ";
    if (rendered[k].empty()) {
      out += '1';
      continue;
    }
    for (std::size_t j = 0; j < rendered[k].size(); ++j) {
      if (j) out += '*';
      out += rendered[k][j];
    }
  }
  return out;
}

}  // namespace gfre
