#pragma once

#include <stdexcept>
#include <string>

namespace pcaag {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define PCAAG_DEFINE_ERROR(Name)         \
  class Name : public Error {            \
   public:                               \
    using Error::Error;                  \
  }

// presentation
PCAAG_DEFINE_ERROR(MalformedDocument);
PCAAG_DEFINE_ERROR(IndexViolation);
PCAAG_DEFINE_ERROR(MissingRelation);
PCAAG_DEFINE_ERROR(InconsistentPresentation);

// collector
PCAAG_DEFINE_ERROR(CollectionBudgetExceeded);

// numberfield
PCAAG_DEFINE_ERROR(NotSquarefree);
PCAAG_DEFINE_ERROR(UnsupportedDegree);
PCAAG_DEFINE_ERROR(NotRealQuadratic);
PCAAG_DEFINE_ERROR(InvalidPolynomial);

// aag / harness
PCAAG_DEFINE_ERROR(InvalidParameter);
PCAAG_DEFINE_ERROR(GenerationStalled);
PCAAG_DEFINE_ERROR(ProtocolSelfCheckFailed);
PCAAG_DEFINE_ERROR(IoError);

#undef PCAAG_DEFINE_ERROR

}  // namespace pcaag
