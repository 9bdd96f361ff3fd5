#include "goalbench/payments.hpp"

#include <cmath>
#include <string>

namespace goalbench {

const char * region_name(PaymentRegion region)
{
  switch(region)
  {
    case PaymentRegion::FullPay: return "full";
    case PaymentRegion::LinearPay: return "linear";
    case PaymentRegion::ZeroPay: return "zero";
  }
  return "unknown";
}

double achievement(double deviation, double ceiling)
{
  if(deviation <= 0.0) return 1.0;
  if(deviation >= ceiling) return 0.0;
  return 1.0 - deviation / ceiling;
}

double payment(double deviation, double endowment, double weight, double ceiling)
{
  return endowment * weight * achievement(deviation, ceiling);
}

PaymentBreakdown total_payment(std::span<const double> deviations,
                               const DmuRecord & dmu,
                               const PaymentSchedule & schedule)
{
  PaymentBreakdown out;
  out.per_indicator.reserve(deviations.size());
  for(std::size_t r = 0; r < deviations.size(); ++r)
  {
    const double p = payment(deviations[r], dmu.endowment, schedule.weight(dmu, r), schedule.ceiling(dmu, r));
    out.per_indicator.push_back(p);
    out.total += p;
  }
  return out;
}

PaymentRegion region_of(double deviation, double ceiling)
{
  if(deviation <= 0.0) return PaymentRegion::FullPay;
  if(deviation <= ceiling) return PaymentRegion::LinearPay;
  return PaymentRegion::ZeroPay;
}

bool region_admits(PaymentRegion region, double deviation, double ceiling)
{
  switch(region)
  {
    case PaymentRegion::FullPay: return deviation <= 0.0;
    // The middle branch collapses to the single point s = 0 when d = 0, where
    // it would need the undefined ratio s/d; such deviations belong to FullPay.
    case PaymentRegion::LinearPay: return ceiling > 0.0 && deviation >= 0.0 && deviation <= ceiling;
    case PaymentRegion::ZeroPay: return deviation >= ceiling;
  }
  return false;
}

double linearized_payment(PaymentRegion region, double deviation, double endowment, double weight, double ceiling)
{
  if(!region_admits(region, deviation, ceiling))
  {
    throw ContractViolation(std::string("deviation ") + std::to_string(deviation) + " is outside the bounds of the "
                            + region_name(region) + " region (ceiling " + std::to_string(ceiling) + ")");
  }
  const double full = region == PaymentRegion::FullPay ? 1.0 : 0.0;
  const double linear = region == PaymentRegion::LinearPay ? 1.0 : 0.0;
  double value = endowment * weight * full;
  if(linear != 0.0) value += endowment * weight * (1.0 - deviation / ceiling) * linear;
  return value;
}

} // namespace goalbench
