#pragma once

#include <stdexcept>
#include <string>

namespace dgcat {

enum class Errc {
    OutOfWindow,
    NotContained,
    CapExceeded,
    IllFormed,
    NotMultiplicative,
    NotBracketable,
    NotACycle,
    NotAFilteredWitness,
    NotFree,
    NotSurjective,
    NotCompatible,
    ObstructionFound,
    NoMatching,
    PreconditionFailed,
    ConfigError,
    Internal,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

inline void require(bool cond, Errc code, const std::string& msg) {
    if (!cond)
        fail(code, msg);
}

}  // namespace dgcat
