#pragma once

#include <stdexcept>
#include <string>

namespace motivic {

// Bad user input: unsupported q, malformed degree, empty window, ...
struct InvalidInputError : std::runtime_error
{
    explicit InvalidInputError(const std::string& what)
        : std::runtime_error(what)
    {
    }
};

// A structurally valid request the engine refuses to run: memory budget
// exceeded, page bound too small for the window, ...
struct WindowRejection : std::runtime_error
{
    explicit WindowRejection(const std::string& what)
        : std::runtime_error(what)
    {
    }
};

}  // namespace motivic
