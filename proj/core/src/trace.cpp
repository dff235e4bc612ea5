#include "smc/trace.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <charconv>
#include <stdexcept>

namespace smc {

Trace::Trace(State initial, double start_time) { append(std::move(initial), start_time); }

void Trace::append(State state, double entry_time) {
  assert(!end_time_ && "append to a closed trace");
  assert((entry_times_.empty() || entry_time > entry_times_.back()) && "sojourns must be positive");
  states_.push_back(std::move(state));
  entry_times_.push_back(entry_time);
}

void Trace::close(double time) {
  assert(!entry_times_.empty() && time >= entry_times_.back());
  end_time_ = time;
}

double Trace::sojourn(std::size_t i) const {
  if (i + 1 < entry_times_.size()) return entry_times_[i + 1] - entry_times_[i];
  if (i + 1 == entry_times_.size() && end_time_) return *end_time_ - entry_times_[i];
  throw std::out_of_range("sojourn of the last state of an open trace is unobserved");
}

const State& Trace::state_at(double t) const {
  if (states_.empty()) throw std::out_of_range("state_at on an empty trace");
  if (t < entry_times_.front() || (end_time_ && t > *end_time_)) {
    throw std::out_of_range("state_at: time outside the trace");
  }
  // Last entry time <= t.
  auto it = std::upper_bound(entry_times_.begin(), entry_times_.end(), t);
  return states_[static_cast<std::size_t>(it - entry_times_.begin()) - 1];
}

void write_trace_csv(std::ostream& out, const Trace& trace,
                     const std::vector<std::string>& species_names) {
  out << "time";
  for (const auto& name : species_names) out << ',' << name;
  out << '\n';
  std::array<char, 64> buf{};
  for (std::size_t i = 0; i < trace.size(); ++i) {
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), trace.entry_time(i));
    out.write(buf.data(), ptr - buf.data());
    for (auto c : trace.state(i).counts) out << ',' << c;
    out << '\n';
  }
}

}  // namespace smc
