#pragma once

#include <stdexcept>
#include <string>

namespace qbat {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidSpec : public Error { public: using Error::Error; };
class TruncationTooSmall : public Error { public: using Error::Error; };
class IndexOutOfRange : public Error { public: using Error::Error; };
class InvalidAngle : public Error { public: using Error::Error; };
class InconsistentDeltaE : public Error { public: using Error::Error; };
class EnergyExceedsDimension : public Error { public: using Error::Error; };
class PhaseLimitExceeded : public Error { public: using Error::Error; };
class ZeroTemperatureUnsupported : public Error { public: using Error::Error; };
class DimensionCapExceeded : public Error { public: using Error::Error; };
class InfeasibleSqueezing : public Error { public: using Error::Error; };
class ConvergenceFailure : public Error { public: using Error::Error; };
class NotBracketed : public Error { public: using Error::Error; };
class GridTooFine : public Error { public: using Error::Error; };
class GridInsufficient : public Error { public: using Error::Error; };
class TruncationWarning : public Error { public: using Error::Error; };
class ConfigError : public Error { public: using Error::Error; };

}  // namespace qbat
