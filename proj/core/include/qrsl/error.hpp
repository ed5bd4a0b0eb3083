#pragma once

#include <stdexcept>
#include <string>

namespace qrsl {

/// Base class for all qrsl errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Codec
class CapacityExceeded : public Error { public: using Error::Error; };
class InvalidCombination : public Error { public: using Error::Error; };
class TooManyErrors : public Error { public: using Error::Error; };

// Features / dictionary
class DegenerateBBox : public Error { public: using Error::Error; };
class NoPositives : public Error { public: using Error::Error; };
class UnknownName : public Error { public: using Error::Error; };

// Alignment / fusion
class DimensionMismatch : public Error { public: using Error::Error; };
class Infeasible : public Error { public: using Error::Error; };

// Metrics
class OutOfRange : public Error { public: using Error::Error; };
class ShapeMismatch : public Error { public: using Error::Error; };
class NoCommonSteps : public Error { public: using Error::Error; };

// File formats / configuration
class ParseError : public Error { public: using Error::Error; };
class IoError : public Error { public: using Error::Error; };

} // namespace qrsl
