#include "gfre/extractor.hpp"

#include <algorithm>
#include <charconv>
#include <functional>

namespace gfre {

IrrPoly::IrrPoly(std::vector<std::size_t> exponents) : exponents_(std::move(exponents)) {
  std::sort(exponents_.begin(), exponents_.end(), std::greater<>());
  if (std::adjacent_find(exponents_.begin(), exponents_.end()) != exponents_.end()) {
    throw Error("polynomial exponent list contains duplicates");
  }
  if (exponents_.empty() || exponents_.front() < 2) throw Error("field polynomial must have degree >= 2");
}

IrrPoly IrrPoly::parse(std::string_view text) {
  std::vector<std::size_t> exps;
  while (true) {
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{}) throw Error("malformed exponent list: expected a number");
    exps.push_back(value);
    text.remove_prefix(static_cast<std::size_t>(ptr - text.data()));
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    if (text.empty()) break;
    if (text.front() != ',') throw Error("malformed exponent list: expected ','");
    text.remove_prefix(1);
  }
  for (std::size_t k = 1; k < exps.size(); ++k) {
    if (exps[k] >= exps[k - 1]) throw Error("exponent list must be strictly descending");
  }
  if (exps.back() != 0) throw Error("exponent list must end with 0");
  return IrrPoly(std::move(exps));
}

bool IrrPoly::has(std::size_t e) const {
  return std::binary_search(exponents_.begin(), exponents_.end(), e, std::greater<>());
}

std::string IrrPoly::to_string() const {
  std::string out;
  for (std::size_t e : exponents_) {
    if (!out.empty()) out += " + ";
    if (e == 0) {
      out += "1";
    } else if (e == 1) {
      out += "x";
    } else {
      out += "x^" + std::to_string(e);
    }
  }
  return out;
}

std::string IrrPoly::exponent_list() const {
  std::string out;
  for (std::size_t e : exponents_) {
    if (!out.empty()) out += ',';
    out += std::to_string(e);
  }
  return out;
}

OutFieldSet out_field_set(std::size_t m) {
  if (m < 2) throw ExtractionError("out-field products need m >= 2, got " + std::to_string(m));
  OutFieldSet set;
  set.m = m;
  for (std::size_t i = m - 1; i >= 1; --i) {
    set.products.push_back(Monomial{input_a_id(i), input_b_id(m, m - i)});
  }
  return set;
}

ExtractionReport extract_irreducible(const RewriteReport& report) {
  const std::size_t m = report.m;
  if (report.bits.size() != m) throw ExtractionError("rewrite report is incomplete");
  const OutFieldSet pm = out_field_set(m);

  std::vector<std::size_t> exps{m};
  ExtractionReport out;
  out.membership.resize(m);
  out.partial_hits.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Poly2& expr = report.bits[i].expr;
    const auto hits = static_cast<std::size_t>(std::count_if(
        pm.products.begin(), pm.products.end(), [&expr](const Monomial& p) { return expr.contains(p); }));
    out.partial_hits[i] = hits;
    out.membership[i] = hits == pm.products.size();
    if (out.membership[i]) exps.push_back(i);
  }

  if (exps.size() == 1) {
    std::string detail;
    for (std::size_t i = 0; i < m; ++i) {
      if (out.partial_hits[i] == 0) continue;
      detail += (detail.empty() ? "" : ", ") + std::string("z") + std::to_string(i) + ": " +
                std::to_string(out.partial_hits[i]) + "/" + std::to_string(m - 1);
    }
    throw ExtractionError("not recognized as a GF(2^" + std::to_string(m) +
                          ") multiplier over polynomial basis: no output holds all out-field products" +
                          (detail.empty() ? std::string{} : " (partial hits " + detail + ")"));
  }

  for (std::size_t i = 0; i < m; ++i) {
    if (!out.membership[i] && out.partial_hits[i] > 0) {
      out.warnings.push_back("z" + std::to_string(i) + " holds only " + std::to_string(out.partial_hits[i]) + " of " +
                             std::to_string(m - 1) + " out-field products");
    }
  }
  out.recovered = IrrPoly(std::move(exps));
  if (!out.recovered.has_constant_term()) {
    out.warnings.push_back("recovered polynomial has no constant term and is not a legal field polynomial");
  }
  const std::size_t terms = out.recovered.exponents().size();
  if (terms != 3 && terms != 5) {
    out.warnings.push_back("recovered polynomial has " + std::to_string(terms) +
                           " terms (neither trinomial nor pentanomial)");
  }
  return out;
}

bool validate_irreducible(const IrrPoly& p) {
  const Gf2x poly = p.to_gf2x();
  return p.degree() <= 20 ? irreducible_by_trial_division(poly) : irreducible_by_rabin(poly);
}

}  // namespace gfre
