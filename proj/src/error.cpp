#include "fdep/error.hpp"

namespace fdep {

const char* ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidVertex: return "invalid-vertex";
    case ErrorKind::kInvalidGraph: return "invalid-graph";
    case ErrorKind::kNoValidCut: return "no-valid-cut";
    case ErrorKind::kSyntax: return "syntax";
    case ErrorKind::kIncompleteAssignment: return "incomplete-assignment";
    case ErrorKind::kIncompleteGame: return "incomplete-game";
    case ErrorKind::kInvalidStrategy: return "invalid-strategy";
    case ErrorKind::kTooLarge: return "too-large";
    case ErrorKind::kNotSparse: return "not-sparse";
    case ErrorKind::kNoProof: return "no-proof";
    case ErrorKind::kNoCounterexample: return "no-counterexample";
    case ErrorKind::kInternalSoundness: return "internal-soundness";
    case ErrorKind::kFormat: return "format";
  }
  return "unknown";
}

}  // namespace fdep
