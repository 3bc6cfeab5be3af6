#pragma once

#include <stdexcept>
#include <string>

namespace flatnewt {

class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Boundary ingestion.
class NonConvexBoundary : public Error { public: using Error::Error; };
class OpenBoundary : public Error { public: using Error::Error; };
class DegenerateDomain : public Error { public: using Error::Error; };

// Support-line analysis.
class NonPointContact : public Error { public: using Error::Error; };
class NotAngular : public Error { public: using Error::Error; };

// Hull construction.
class DegenerateInput : public Error { public: using Error::Error; };
class EmptyUpperSurface : public Error { public: using Error::Error; };

// Concave functions.
class ApexOutsideDomain : public Error { public: using Error::Error; };
class PointOutsideDomain : public Error { public: using Error::Error; };

// Witness construction: the requested chord step is too large for the
// locality clip; schedules skip the step.
class ChordTooShort : public Error { public: using Error::Error; };

// Integration.
class ZeroDenominator : public Error { public: using Error::Error; };

// Divergence certificates.
class HypothesisFailed : public Error { public: using Error::Error; };
class BudgetExhausted : public Error {
public:
  BudgetExhausted(const std::string& msg, double best) : Error(msg), best_ratio(best) {}
  double best_ratio = 0.0;
};
class PhiOutOfRange : public Error { public: using Error::Error; };

// Hessian handling.
class NonFiniteSamples : public Error { public: using Error::Error; };
class AsymmetricInput : public Error { public: using Error::Error; };

// I/O.
class ParseError : public Error { public: using Error::Error; };
class ValidationError : public Error { public: using Error::Error; };

}  // namespace flatnewt
