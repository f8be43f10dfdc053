#include "mgahhn/error.hpp"

namespace mgahhn {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::MalformedLine: return "MalformedLine";
    case Errc::UnknownType: return "UnknownType";
    case Errc::DanglingEdge: return "DanglingEdge";
    case Errc::FeatureDimMismatch: return "FeatureDimMismatch";
    case Errc::UnknownNode: return "UnknownNode";
    case Errc::UnknownEdgeType: return "UnknownEdgeType";
    case Errc::UnknownTypeName: return "UnknownTypeName";
    case Errc::AmbiguousEdgeType: return "AmbiguousEdgeType";
    case Errc::NoEdgeType: return "NoEdgeType";
    case Errc::NotSymmetric: return "NotSymmetric";
    case Errc::EndpointNotTarget: return "EndpointNotTarget";
    case Errc::EvenLength: return "EvenLength";
    case Errc::WrongCenterType: return "WrongCenterType";
    case Errc::EmptyView: return "EmptyView";
    case Errc::SingularDegree: return "SingularDegree";
    case Errc::ZeroDegreeHyperedge: return "ZeroDegreeHyperedge";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::NonFinite: return "NonFinite";
    case Errc::NotScalar: return "NotScalar";
    case Errc::DetachedLoss: return "DetachedLoss";
    case Errc::MissingGrad: return "MissingGrad";
    case Errc::ClassTooSmall: return "ClassTooSmall";
    case Errc::NonFiniteLoss: return "NonFiniteLoss";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::KTooLarge: return "KTooLarge";
    case Errc::InfeasibleConfig: return "InfeasibleConfig";
    case Errc::ConfigInvalid: return "ConfigInvalid";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace mgahhn
