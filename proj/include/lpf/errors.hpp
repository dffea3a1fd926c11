#ifndef LPF_ERRORS_HPP
#define LPF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lpf {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : Error {
    using Error::Error;
};
struct ParseError : Error {
    using Error::Error;
};
struct EmptyCloud : Error {
    using Error::Error;
};
struct InvalidBandlimit : Error {
    using Error::Error;
};
struct NotCentered : Error {
    using Error::Error;
};
struct GridMismatch : Error {
    using Error::Error;
};
struct InvalidDegreeOrder : Error {
    using Error::Error;
};
struct InvalidFilterParam : Error {
    using Error::Error;
};
struct ShrinkRequested : Error {
    using Error::Error;
};
struct TooFewPoints : Error {
    using Error::Error;
};
struct DropTooLarge : Error {
    using Error::Error;
};
struct InvalidSpec : Error {
    using Error::Error;
};
struct LengthMismatch : Error {
    using Error::Error;
};
struct EmptySet : Error {
    using Error::Error;
};
struct BandlimitMismatch : Error {
    using Error::Error;
};
struct MissingPair : Error {
    using Error::Error;
};

}  // namespace lpf

#endif
