#include "cdosc/schedule.hpp"

#include <cmath>
#include <string>

#include "cdosc/errors.hpp"

namespace cdosc {

namespace {

// Relative slack applied to the ramp domain check: fixed-step integrators
// accumulate t = i * dt in floating point and may land a few ulp past tau_q.
constexpr double kDomainSlack = 1e-9;

}  // namespace

Schedule::Schedule(ScheduleKind kind, double value0, double value_f, double tau_q)
    : kind_(kind), value0_(value0), value_f_(value_f), tau_q_(tau_q) {}

Schedule Schedule::constant(double value) {
  return Schedule(ScheduleKind::Constant, value, value, 0.0);
}

Schedule Schedule::linear_ramp(double value0, double value_f, double tau_q) {
  if (!(tau_q > 0.0)) {
    throw DomainError("linear ramp requires tau_q > 0, got " + std::to_string(tau_q));
  }
  return Schedule(ScheduleKind::LinearRamp, value0, value_f, tau_q);
}

Schedule Schedule::smooth_ramp(double value0, double value_f, double tau_q) {
  if (!(tau_q > 0.0)) {
    throw DomainError("smooth ramp requires tau_q > 0, got " + std::to_string(tau_q));
  }
  return Schedule(ScheduleKind::SmoothRamp, value0, value_f, tau_q);
}

ScheduleSample Schedule::eval(double t) const {
  if (kind_ == ScheduleKind::Constant) {
    return {value0_, 0.0};
  }

  const double slack = kDomainSlack * tau_q_;
  if (t < -slack || t > tau_q_ + slack) {
    throw DomainError("schedule evaluated at t = " + std::to_string(t) +
                      " outside [0, " + std::to_string(tau_q_) + "]");
  }
  double s = t / tau_q_;
  if (s < 0.0) s = 0.0;
  if (s > 1.0) s = 1.0;

  const double span = value_f_ - value0_;
  switch (kind_) {
    case ScheduleKind::LinearRamp:
      return {value0_ + span * s, span / tau_q_};
    case ScheduleKind::SmoothRamp: {
      const double shape = s * s * (3.0 - 2.0 * s);
      const double dshape = 6.0 * s * (1.0 - s);
      return {value0_ + span * shape, span * dshape / tau_q_};
    }
    default:
      break;
  }
  throw DomainError("unreachable schedule kind");
}

}  // namespace cdosc
