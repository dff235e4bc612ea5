#include "smc/checker.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace smc {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::False: return "false";
    case Verdict::True: return "true";
    case Verdict::Unknown: return "unknown";
  }
  return "?";
}

Verdict verdict_not(Verdict v) {
  switch (v) {
    case Verdict::False: return Verdict::True;
    case Verdict::True: return Verdict::False;
    default: return Verdict::Unknown;
  }
}

Verdict verdict_and(Verdict a, Verdict b) {
  if (a == Verdict::False || b == Verdict::False) return Verdict::False;
  if (a == Verdict::True && b == Verdict::True) return Verdict::True;
  return Verdict::Unknown;
}

Verdict verdict_or(Verdict a, Verdict b) {
  if (a == Verdict::True || b == Verdict::True) return Verdict::True;
  if (a == Verdict::False && b == Verdict::False) return Verdict::False;
  return Verdict::Unknown;
}

TraceBuffer::TraceBuffer(const Model& model, const State& initial, double t_max, RngStream& rng)
    : method_(model), rng_(&rng), trace_(initial, 0.0), current_(initial), t_max_(t_max) {
  if (!(t_max > 0.0)) throw std::invalid_argument("t_max must be positive");
}

void TraceBuffer::extend() {
  auto outcome = method_.next_event(current_, *rng_);
  const auto* event = std::get_if<NextEvent>(&outcome);
  if (!event) {
    tail_ = Tail::Absorbed;
    return;
  }
  const double t = trace_.entry_time(trace_.size() - 1);
  double next_t = t + event->delay;
  if (next_t <= t) next_t = std::nextafter(t, std::numeric_limits<double>::infinity());
  apply_stoichiometry_in_place(current_, method_.model().reactions()[event->reaction]);
  trace_.append(current_, next_t);
  if (next_t > t_max_) tail_ = Tail::Horizon;
}

bool TraceBuffer::ensure(std::size_t i) {
  while (tail_ == Tail::Open && trace_.size() <= i) extend();
  return i < usable_size();
}

std::size_t TraceBuffer::usable_size() const {
  return tail_ == Tail::Horizon ? trace_.size() - 1 : trace_.size();
}

namespace {

class OnTheFlyChecker {
 public:
  OnTheFlyChecker(TraceBuffer& buffer, std::span<const double> parameters)
      : buffer_(buffer), parameters_(parameters) {}

  Verdict eval(const Formula& f, std::size_t i) {
    switch (f.kind()) {
      case Formula::Kind::Atom:
        return evaluate_atom(f, buffer_.trace().state(i), parameters_) ? Verdict::True : Verdict::False;
      case Formula::Kind::Not:
        return verdict_not(eval(f.child(0), i));
      case Formula::Kind::And: {
        const Verdict lhs = eval(f.child(0), i);
        if (lhs == Verdict::False) return lhs;
        return verdict_and(lhs, eval(f.child(1), i));
      }
      case Formula::Kind::Or: {
        const Verdict lhs = eval(f.child(0), i);
        if (lhs == Verdict::True) return lhs;
        return verdict_or(lhs, eval(f.child(1), i));
      }
      case Formula::Kind::Next:
        return next(f, i);
      case Formula::Kind::Until:
        return until(f, i);
      case Formula::Kind::Finally:
      case Formula::Kind::Globally:
        break;
    }
    throw std::invalid_argument("simulate_verify needs a desugared formula");
  }

 private:
  double entry(std::size_t k) const { return buffer_.trace().entry_time(k); }

  /// Called when point k+1 could not be produced. Decides whether some later
  /// point could still fall inside an upper bound measured from position i.
  bool future_possible(std::size_t i, double upper) const {
    if (buffer_.tail() == TraceBuffer::Tail::Absorbed) return false;
    // The next point lies beyond t_max, so its elapsed time from i exceeds
    // t_max - entry(i).
    return upper > buffer_.t_max() - entry(i);
  }

  Verdict next(const Formula& f, std::size_t i) {
    const Interval& bound = f.interval();
    if (buffer_.ensure(i + 1)) {
      if (!bound.contains(entry(i + 1) - entry(i))) return Verdict::False;
      return eval(f.child(0), i + 1);
    }
    return future_possible(i, bound.upper) ? Verdict::Unknown : Verdict::False;
  }

  Verdict until(const Formula& f, std::size_t i) {
    const Interval& bound = f.interval();
    const Formula& hold = f.child(0);
    const Formula& goal = f.child(1);
    Verdict result = Verdict::False;  // disjunction over witnesses seen so far
    Verdict prefix = Verdict::True;   // conjunction of `hold` strictly before k
    for (std::size_t k = i;; ++k) {
      const double elapsed = entry(k) - entry(i);
      if (elapsed > bound.upper) return result;
      if (elapsed >= bound.lower) {
        result = verdict_or(result, verdict_and(prefix, eval(goal, k)));
        if (result == Verdict::True) return result;
      }
      prefix = verdict_and(prefix, eval(hold, k));
      if (prefix == Verdict::False) return result;
      if (!buffer_.ensure(k + 1)) {
        return future_possible(i, bound.upper) ? verdict_or(result, Verdict::Unknown) : result;
      }
    }
  }

  TraceBuffer& buffer_;
  std::span<const double> parameters_;
};

}  // namespace

CheckResult simulate_verify(const Formula& formula, const Model& model, const State& initial,
                            double t_max, RngStream& rng) {
  if (!formula.is_desugared()) throw std::invalid_argument("simulate_verify needs a desugared formula");
  TraceBuffer buffer(model, initial, t_max, rng);
  OnTheFlyChecker checker(buffer, model.parameters());
  const Verdict v = checker.eval(formula, 0);
  return {v, std::move(buffer).take_trace()};
}

bool finalize_verdict(Verdict v) { return v == Verdict::True; }

}  // namespace smc
