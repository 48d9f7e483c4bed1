#pragma once

namespace cdosc {

enum class ScheduleKind { Constant, LinearRamp, SmoothRamp };

struct ScheduleSample {
  double value;
  double derivative;
};

// A time-dependent control parameter with an exact analytic derivative.
//
// Ramps interpolate value0 -> value_f over [0, tau_q].  The smooth ramp uses
// the C^1 cubic 3 s^2 - 2 s^3 (s = t / tau_q), whose derivative vanishes at
// both endpoints.  Constants are defined for every t; ramps throw DomainError
// outside [0, tau_q] (up to a relative slack of ~1e-9 so that accumulated
// integrator time hitting the endpoint does not spuriously fail).
class Schedule {
 public:
  static Schedule constant(double value);
  static Schedule linear_ramp(double value0, double value_f, double tau_q);
  static Schedule smooth_ramp(double value0, double value_f, double tau_q);

  ScheduleSample eval(double t) const;

  ScheduleKind kind() const { return kind_; }
  double value0() const { return value0_; }
  double value_f() const { return value_f_; }
  double tau_q() const { return tau_q_; }

 private:
  Schedule(ScheduleKind kind, double value0, double value_f, double tau_q);

  ScheduleKind kind_;
  double value0_;
  double value_f_;
  double tau_q_;
};

}  // namespace cdosc
