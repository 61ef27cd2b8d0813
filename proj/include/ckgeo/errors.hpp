#pragma once

#include <stdexcept>
#include <string>

namespace ckgeo {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotHyperbolic : Error {
    using Error::Error;
};
struct SameGeodesic : Error {
    using Error::Error;
};
struct NotHyperbolicGenerator : Error {
    using Error::Error;
};
struct NotHyperbolicSeed : Error {
    using Error::Error;
};
struct EmptyWord : Error {
    using Error::Error;
};
struct InvalidParams : Error {
    using Error::Error;
};
struct InvalidCombination : Error {
    using Error::Error;
};
struct KTooSmall : Error {
    using Error::Error;
};
struct TooClose : Error {
    using Error::Error;
};
struct Disconnected : Error {
    using Error::Error;
};
struct NotInSubgroupSquare : Error {
    using Error::Error;
};
struct NotPeripheral : Error {
    using Error::Error;
};
struct UnknownScenario : Error {
    using Error::Error;
};
struct OrbitEscapedTruncation : Error {
    using Error::Error;
};

}  // namespace ckgeo
