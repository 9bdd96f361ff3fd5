#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "goalbench/domain.hpp"

namespace goalbench {

/// Branch of the piecewise-linear payment function a deviation falls in.
enum class PaymentRegion
{
  FullPay,   ///< s <= 0: goal met, the full Q*w is paid
  LinearPay, ///< 0 <= s <= d: payment decreases linearly
  ZeroPay,   ///< s >= d: nothing is paid
};

const char * region_name(PaymentRegion region);

struct PaymentBreakdown
{
  std::vector<double> per_indicator;
  double total = 0.0;
};

/// Raised when a (region, deviation) pair does not satisfy the region bounds.
class ContractViolation : public std::logic_error
{
public:
  using std::logic_error::logic_error;
};

/// Degree of achievement of a goal given the deviation s = goal - actual and
/// the ceiling d beyond which nothing is achieved. A zero ceiling turns the
/// function into a step (1 for s <= 0, else 0).
double achievement(double deviation, double ceiling);

/// Incentive paid for one indicator: Q * w * achievement(s, d).
double payment(double deviation, double endowment, double weight, double ceiling);

/// Per-indicator and total payment of a DMU for a vector of deviations.
PaymentBreakdown total_payment(std::span<const double> deviations,
                               const DmuRecord & dmu,
                               const PaymentSchedule & schedule);

/// Region that `deviation` falls in. At the shared boundaries s = 0 and s = d
/// the lower region is returned; with d = 0 LinearPay is never returned.
PaymentRegion region_of(double deviation, double ceiling);

/// True when `deviation` lies inside the closed bounds of `region`.
bool region_admits(PaymentRegion region, double deviation, double ceiling);

/// Payment evaluated through the region indicator form
///   Q w [region == FullPay] + Q w (1 - s/d) [region == LinearPay].
/// Throws ContractViolation if `deviation` is outside the region bounds.
double linearized_payment(PaymentRegion region, double deviation, double endowment, double weight, double ceiling);

} // namespace goalbench
