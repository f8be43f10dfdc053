#pragma once

#include <stdexcept>
#include <string>

namespace mgahhn {

// Every failure the library reports carries one of these codes. The CLI
// prints failures as `error: <CodeName>: <message>` on a single line, so
// callers can match on the code name.
enum class Errc {
  // graph loading / validation
  MalformedLine,
  UnknownType,
  DanglingEdge,
  FeatureDimMismatch,
  UnknownNode,
  UnknownEdgeType,
  // meta-path parsing / symmetry
  UnknownTypeName,
  AmbiguousEdgeType,
  NoEdgeType,
  NotSymmetric,
  EndpointNotTarget,
  EvenLength,
  WrongCenterType,
  // hypergraph construction
  EmptyView,
  SingularDegree,
  ZeroDegreeHyperedge,
  // tensor engine
  ShapeMismatch,
  NonFinite,
  NotScalar,
  DetachedLoss,
  MissingGrad,
  // training / evaluation
  ClassTooSmall,
  NonFiniteLoss,
  LengthMismatch,
  KTooLarge,
  // configuration / io
  InfeasibleConfig,
  ConfigInvalid,
  IoError,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const { return code_; }
  const char* code_name() const { return errc_name(code_); }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace mgahhn
