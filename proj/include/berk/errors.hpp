#pragma once

#include <stdexcept>
#include <string>

namespace berk {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define BERK_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                     \
   public:                                                        \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
  }

BERK_DEFINE_ERROR(NegativeValuation);
BERK_DEFINE_ERROR(ZeroPolynomial);
BERK_DEFINE_ERROR(InseparableResidual);
BERK_DEFINE_ERROR(BothInfinite);
BERK_DEFINE_ERROR(EmptyTree);
BERK_DEFINE_ERROR(RadiusOutOfRange);
BERK_DEFINE_ERROR(MalformedTuple);
BERK_DEFINE_ERROR(OutsideUnitDisk);
BERK_DEFINE_ERROR(ZeroMap);
BERK_DEFINE_ERROR(DomainError);

#undef BERK_DEFINE_ERROR

/// A root cluster that cannot be resolved over the supported domains.
/// `partial` describes the part of the cluster tree built before the failure,
/// `residue_factor` the residue polynomial that blocked refinement.
class UnresolvedCluster : public Error {
 public:
  UnresolvedCluster(const std::string& what, std::string partial = {},
                    std::string residue_factor = {})
      : Error("UnresolvedCluster: " + what),
        partial_(std::move(partial)),
        residue_factor_(std::move(residue_factor)) {}

  const std::string& partial() const noexcept { return partial_; }
  const std::string& residue_factor() const noexcept { return residue_factor_; }

 private:
  std::string partial_;
  std::string residue_factor_;
};

class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, std::string where)
      : Error("BudgetExceeded: " + what), where_(std::move(where)) {}
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

}  // namespace berk
