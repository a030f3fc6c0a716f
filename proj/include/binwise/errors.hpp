#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace binwise {

class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class InvalidModel : public Error
{
public:
    using Error::Error;
};

class UnknownPartition : public Error
{
public:
    explicit UnknownPartition(const std::string& id)
        : Error("plan references unknown partition '" + id + "'"), id_(id)
    {
    }
    const std::string& id() const noexcept { return id_; }

private:
    std::string id_;
};

/// Raised by guarded exhaustive routines (oracle, enumeration) when the input
/// exceeds what they are willing to enumerate.
class InstanceTooLarge : public Error
{
public:
    using Error::Error;
};

class ClassificationError : public Error
{
public:
    explicit ClassificationError(std::size_t index)
        : Error("invalid character at index " + std::to_string(index)), index_(index)
    {
    }
    explicit ClassificationError(const std::string& message)
        : Error(message), index_(0)
    {
    }
    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

class PatternSyntaxError : public Error
{
public:
    PatternSyntaxError(const std::string& message, std::size_t position)
        : Error(message + " at position " + std::to_string(position)), position_(position)
    {
    }
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

class IoError : public Error
{
public:
    using Error::Error;
};

}  // namespace binwise
