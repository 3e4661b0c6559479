#pragma once

#include <stdexcept>
#include <string>

namespace mas {

/// Base class for every error this library raises on a precondition or
/// input-validation failure. Catching mas::Error at a boundary (the CLI does
/// exactly this) is enough to separate caller mistakes from genuine bugs.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& message) : std::runtime_error(message) {}
};

/// A container that must hold at least one entry was empty.
class EmptyInput : public Error {
public:
    using Error::Error;
};

/// Every cluster size was zero, so no partition remains after dropping them.
class AllZero : public Error {
public:
    using Error::Error;
};

/// An input value was NaN or infinite.
class NonFinite : public Error {
public:
    using Error::Error;
};

/// A numeric argument fell outside its documented range.
class OutOfRange : public Error {
public:
    using Error::Error;
};

/// A cluster index did not refer to an existing cluster.
class IndexOutOfRange : public Error {
public:
    using Error::Error;
};

/// The operation needs at least two clusters.
class SingleCluster : public Error {
public:
    using Error::Error;
};

/// Two sequences that must agree in length did not.
class LengthMismatch : public Error {
public:
    using Error::Error;
};

/// A clustering had K = 1 or K = N, so the silhouette is undefined.
class DegenerateClustering : public Error {
public:
    using Error::Error;
};

/// Every candidate pair was tied in reference value or in score, leaving no
/// pair to count.
class AllPairsTied : public Error {
public:
    using Error::Error;
};

/// The confined-reassignment active set was empty.
class EmptyActiveSet : public Error {
public:
    using Error::Error;
};

/// No candidate survived validation and exclusion.
class NoValidCandidates : public Error {
public:
    using Error::Error;
};

/// Malformed input text: an unreadable file, a bad number, invalid JSON.
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace mas
