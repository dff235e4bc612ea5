#include "smc/offline.hpp"

#include <stdexcept>

namespace smc {

bool check_trace_offline(const Formula& f, const Trace& trace, std::size_t i,
                         std::span<const double> parameters) {
  if (i >= trace.size()) throw std::out_of_range("check_trace_offline: position outside the trace");
  const std::size_t n = trace.size();
  auto holds = [&](const Formula& g, std::size_t k) { return check_trace_offline(g, trace, k, parameters); };
  auto elapsed = [&](std::size_t k) { return trace.entry_time(k) - trace.entry_time(i); };

  switch (f.kind()) {
    case Formula::Kind::Atom:
      return evaluate_atom(f, trace.state(i), parameters);
    case Formula::Kind::Not:
      return !holds(f.child(0), i);
    case Formula::Kind::And:
      return holds(f.child(0), i) && holds(f.child(1), i);
    case Formula::Kind::Or:
      return holds(f.child(0), i) || holds(f.child(1), i);
    case Formula::Kind::Next:
      if (i + 1 >= n) return false;
      return f.interval().contains(elapsed(i + 1)) && holds(f.child(0), i + 1);
    case Formula::Kind::Until:
      for (std::size_t k = i; k < n; ++k) {
        const double t = elapsed(k);
        if (t > f.interval().upper) return false;
        if (f.interval().contains(t) && holds(f.child(1), k)) return true;
        if (!holds(f.child(0), k)) return false;
      }
      return false;
    case Formula::Kind::Finally:
      for (std::size_t k = i; k < n && elapsed(k) <= f.interval().upper; ++k) {
        if (f.interval().contains(elapsed(k)) && holds(f.child(0), k)) return true;
      }
      return false;
    case Formula::Kind::Globally:
      for (std::size_t k = i; k < n && elapsed(k) <= f.interval().upper; ++k) {
        if (f.interval().contains(elapsed(k)) && !holds(f.child(0), k)) return false;
      }
      return true;
  }
  return false;
}

}  // namespace smc
