#pragma once

#include <stdexcept>
#include <string>

namespace wucb {

// Every failure class carries its own process exit code so CLI callers can
// distinguish them without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(int exit_code, const std::string& what) : std::runtime_error(what), code_(exit_code) {}
  int exit_code() const { return code_; }

 private:
  int code_;
};

struct SchemaError : Error { explicit SchemaError(const std::string& m) : Error(2, m) {} };
struct ValidationError : Error { explicit ValidationError(const std::string& m) : Error(3, m) {} };
struct IoError : Error { explicit IoError(const std::string& m) : Error(4, m) {} };
struct DimensionMismatch : Error { explicit DimensionMismatch(const std::string& m) : Error(5, m) {} };
struct AmbiguousOptimum : Error { explicit AmbiguousOptimum(const std::string& m) : Error(6, m) {} };
struct InvalidGamma : Error { explicit InvalidGamma(const std::string& m) : Error(7, m) {} };
struct OutOfRangeObservation : Error { explicit OutOfRangeObservation(const std::string& m) : Error(8, m) {} };
struct UnknownPreference : Error { explicit UnknownPreference(const std::string& m) : Error(9, m) {} };
struct HorizonTooShort : Error { explicit HorizonTooShort(const std::string& m) : Error(10, m) {} };
struct EpsOutOfRange : Error { explicit EpsOutOfRange(const std::string& m) : Error(11, m) {} };
struct NotInS1 : Error { explicit NotInS1(const std::string& m) : Error(12, m) {} };
struct NotInS2 : Error { explicit NotInS2(const std::string& m) : Error(13, m) {} };
struct SupportMismatch : Error { explicit SupportMismatch(const std::string& m) : Error(14, m) {} };
struct NonpositiveKL : Error { explicit NonpositiveKL(const std::string& m) : Error(15, m) {} };
struct BelowThreshold : Error { explicit BelowThreshold(const std::string& m) : Error(16, m) {} };

}  // namespace wucb
