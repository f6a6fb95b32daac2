#include "dgcat/error.hpp"

namespace dgcat {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::OutOfWindow: return "OutOfWindow";
        case Errc::NotContained: return "NotContained";
        case Errc::CapExceeded: return "CapExceeded";
        case Errc::IllFormed: return "IllFormed";
        case Errc::NotMultiplicative: return "NotMultiplicative";
        case Errc::NotBracketable: return "NotBracketable";
        case Errc::NotACycle: return "NotACycle";
        case Errc::NotAFilteredWitness: return "NotAFilteredWitness";
        case Errc::NotFree: return "NotFree";
        case Errc::NotSurjective: return "NotSurjective";
        case Errc::NotCompatible: return "NotCompatible";
        case Errc::ObstructionFound: return "ObstructionFound";
        case Errc::NoMatching: return "NoMatching";
        case Errc::PreconditionFailed: return "PreconditionFailed";
        case Errc::ConfigError: return "ConfigError";
        case Errc::Internal: return "Internal";
    }
    return "Unknown";
}

}  // namespace dgcat
