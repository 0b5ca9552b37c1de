#pragma once

#include <stdexcept>
#include <string>

namespace hclab {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operands belong to different group contexts (circle vs. p-adic, different p, ...).
class ContextMismatch : public Error {
public:
    using Error::Error;
};

/// e^{2 pi i k a} = 1: the character is fixed by a and the averaging bound does not apply.
class FixedCharacter : public Error {
public:
    using Error::Error;
};

/// A translation does not map the discretization grid onto itself.
class GridMismatch : public Error {
public:
    using Error::Error;
};

class NonPositiveWeight : public Error {
public:
    using Error::Error;
};

class PlateauResolutionFailure : public Error {
public:
    using Error::Error;
};

/// A p-adic operation would leave the valuation window p^{-m} Z_p / p^K Z_p.
class WindowExceeded : public Error {
public:
    using Error::Error;
};

/// Raised by self-checks that can only fail through an arithmetic bug.
class InternalInconsistency : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

} // namespace hclab
