#pragma once

#include <stdexcept>
#include <string>

namespace crownlab
{

// Every failure carries a stable code (NotEuler, PoleHit, ...) used by the CLI and tests.
class Error : public std::runtime_error
{
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code))
    {
    }

    const std::string& code() const { return code_; }

private:
    std::string code_;
};

}  // namespace crownlab
