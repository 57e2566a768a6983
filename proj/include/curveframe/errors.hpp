#pragma once

#include <stdexcept>
#include <string>

namespace curveframe {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TooFewPoints : Error {
    using Error::Error;
};

struct ZeroLengthSegment : Error {
    using Error::Error;
};

struct NotUnitSpeed : Error {
    using Error::Error;
};

struct NotOrthonormal : Error {
    using Error::Error;
};

struct NonzeroTwist : Error {
    using Error::Error;
};

struct NoRegularNodes : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace curveframe
