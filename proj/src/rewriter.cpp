#include "gfre/rewriter.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <iterator>
#include <mutex>
#include <numeric>
#include <thread>

namespace gfre {

namespace {

// Working polynomial of one rewriting run.
//
// Monomials are bucketed by their largest variable. Because ids follow the
// topological order and gates are substituted from the outputs backwards,
// the variable being eliminated is always the largest one still present,
// so its occurrences are exactly one bucket.
class WorkingPoly {
 public:
  explicit WorkingPoly(std::size_t var_count) : buckets_(var_count) {}

  void toggle(Monomial&& m) {
    if (m.is_one()) {
      has_one_ = !has_one_;
      has_one_ ? ++size_ : --size_;
      return;
    }
    auto& bucket = buckets_[m.last().value];
    auto [it, inserted] = bucket.insert(std::move(m));
    if (inserted) {
      ++size_;
    } else {
      bucket.erase(it);
      --size_;
    }
  }

  // F <- F[v := g]. Every monomial containing v has v as its largest variable.
  void substitute(VarId v, const Poly2& g) {
    Poly2::Terms hits;
    hits.swap(buckets_[v.value]);
    size_ -= hits.size();
    for (const auto& m : hits) {
      Monomial rest = m.without(v);
      for (const auto& t : g.terms()) toggle(rest * t);
    }
  }

  std::size_t size() const noexcept { return size_; }

  // First variable id >= `from` that still occurs, if any.
  std::optional<VarId> first_occurrence_from(std::size_t from) const {
    for (std::size_t id = from; id < buckets_.size(); ++id) {
      if (!buckets_[id].empty()) return VarId{static_cast<std::uint32_t>(id)};
    }
    return std::nullopt;
  }

  Poly2 take() && {
    Poly2 out;
    if (has_one_) out.toggle(Monomial::one());
    for (auto& bucket : buckets_) {
      for (auto& m : bucket) out.toggle(m);
    }
    return out;
  }

 private:
  std::vector<Poly2::Terms> buckets_;
  bool has_one_ = false;
  std::size_t size_ = 0;
};

BitExpression rewrite_cone(const Netlist& netlist, const Cone& cone) {
  const auto start = std::chrono::steady_clock::now();
  BitExpression result;
  result.bit = cone.root;

  WorkingPoly f(netlist.var_count());
  f.toggle(Monomial{netlist.output_z(cone.root)});
  std::size_t peak = f.size();

  auto gates = netlist.gates();
  std::vector<Poly2> operands;
  for (std::size_t gi : cone.gates) {
    const Gate& gate = gates[gi];
    operands.clear();
    for (VarId in : gate.inputs) operands.push_back(Poly2::var(in));
    f.substitute(gate.out, gate_to_poly(gate.kind, operands));
    peak = std::max(peak, f.size());
    ++result.stats.steps;
  }

  if (auto stray = f.first_occurrence_from(2 * netlist.width())) {
    throw RewriteError("signal '" + netlist.name(*stray) + "' remains after rewriting output z" +
                       std::to_string(cone.root));
  }
  result.expr = std::move(f).take();
  result.stats.peak_monomials = peak;
  result.stats.wall_time = std::chrono::steady_clock::now() - start;
  return result;
}

}  // namespace

BitExpression rewrite_bit(const Netlist& netlist, std::size_t bit) {
  return rewrite_cone(netlist, netlist.cone_of(bit));
}

RewriteReport rewrite_all(const Netlist& netlist, unsigned threads) {
  if (threads == 0) throw std::invalid_argument("thread count must be at least 1");
  const auto start = std::chrono::steady_clock::now();
  const std::size_t m = netlist.width();

  std::vector<Cone> cones;
  cones.reserve(m);
  for (std::size_t i = 0; i < m; ++i) cones.push_back(netlist.cone_of(i));

  // Largest cones first.
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&cones](std::size_t x, std::size_t y) {
    return cones[x].gates.size() > cones[y].gates.size();
  });

  RewriteReport report;
  report.m = m;
  report.threads = threads;
  report.bits.resize(m);
  std::vector<std::exception_ptr> errors(m);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t k = next.fetch_add(1); k < m; k = next.fetch_add(1)) {
      const std::size_t bit = order[k];
      try {
        report.bits[bit] = rewrite_cone(netlist, cones[bit]);
      } catch (...) {
        errors[bit] = std::current_exception();
      }
    }
  };
  {
    const unsigned spawn = static_cast<unsigned>(std::min<std::size_t>(threads, m));
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < spawn; ++t) pool.emplace_back(worker);
    worker();
  }

  for (std::size_t bit = 0; bit < m; ++bit) {
    if (!errors[bit]) continue;
    try {
      std::rethrow_exception(errors[bit]);
    } catch (const std::exception& e) {
      throw RewriteError("bit " + std::to_string(bit) + ": " + e.what());
    }
  }
  report.total_time = std::chrono::steady_clock::now() - start;
  return report;
}

std::string render_expression(const Poly2& expr, std::size_t m) {
  return to_string(expr, [m](VarId v) { return input_name(m, v); });
}

}  // namespace gfre
