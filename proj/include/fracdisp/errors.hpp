#pragma once

#include <stdexcept>
#include <string>

namespace fracdisp {

class Error : public std::runtime_error {
   public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
    virtual const char* kind() const noexcept { return "error"; }
};

class DomainError : public Error {
   public:
    explicit DomainError(const std::string& msg) : Error(msg) {}
    const char* kind() const noexcept override { return "domain"; }
};

class PoleError : public Error {
   public:
    explicit PoleError(const std::string& msg) : Error(msg) {}
    const char* kind() const noexcept override { return "pole"; }
};

class OverflowError : public Error {
   public:
    explicit OverflowError(const std::string& msg) : Error(msg) {}
    const char* kind() const noexcept override { return "overflow"; }
};

class ConvergenceError : public Error {
   public:
    explicit ConvergenceError(const std::string& msg) : Error(msg) {}
    const char* kind() const noexcept override { return "convergence"; }
};

}  // namespace fracdisp
