#pragma once
#include <stdexcept>
#include <string>

// Error taxonomy for the library. Everything derives from samrot::Error so
// callers (notably the CLI) can map any domain failure to a single handler,
// while tests can still assert the precise category.

namespace samrot {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// argument outside its documented domain (NaN, negative mass, bad tolerance...)
class InvalidInput : public Error { public: using Error::Error; };

// principal moments not supplied in ascending order
class OrderingError : public Error { public: using Error::Error; };

// state lies in the N <= 0 hemisphere where the short-axis split is undefined
class SymmetryError : public Error { public: using Error::Error; };

// triaxiality so close to 1 that sigma = sqrt(1 - beta^2) loses all accuracy
class ProlateSingularity : public Error { public: using Error::Error; };

// requested order beyond what the engine or the baked tables support
class CapacityError : public Error { public: using Error::Error; };

// Hamiltonian handed to the normalizer is not of the expected form
class ShapeError : public Error { public: using Error::Error; };

// homological equation received a term it cannot invert (angle-free input)
class HomologicalError : public Error { public: using Error::Error; };

// fixed-point inversion of the near-identity map failed to converge
class InversionError : public Error { public: using Error::Error; };

// energy scaling requested for a spherical body (alpha == 0)
class DegenerateScaling : public Error { public: using Error::Error; };

} // namespace samrot
