#pragma once

#include <stdexcept>
#include <string>

namespace tproot {

/// Base class for every error raised by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Caller supplied data that violates an operation's precondition.
class InvalidInput : public Error
{
public:
    using Error::Error;
};

class InvalidField : public InvalidInput
{
public:
    using InvalidInput::InvalidInput;
};

class NotInSubgroup : public InvalidInput
{
public:
    using InvalidInput::InvalidInput;
};

class NotInGroup : public InvalidInput
{
public:
    using InvalidInput::InvalidInput;
};

class ZeroArgument : public InvalidInput
{
public:
    using InvalidInput::InvalidInput;
};

class PrimeMismatch : public InvalidInput
{
public:
    using InvalidInput::InvalidInput;
};

class InvalidCurve : public InvalidInput
{
public:
    using InvalidInput::InvalidInput;
};

class PreconditionError : public InvalidInput
{
public:
    using InvalidInput::InvalidInput;
};

/// Characters of conductor >= 2 (wild ramification) are not handled.
class UnsupportedConductor : public InvalidInput
{
public:
    using InvalidInput::InvalidInput;
};

/// A search or enumeration would exceed its configured bound.
class ResourceLimit : public Error
{
public:
    using Error::Error;
};

/// Shift points for the Miller evaluation kept hitting divisor supports.
class RetryExhausted : public Error
{
public:
    using Error::Error;
};

class NumericInstability : public Error
{
public:
    using Error::Error;
};

/// A mathematical identity the library relies on failed to hold.
class InternalInconsistency : public Error
{
public:
    using Error::Error;
};

} // namespace tproot
