#pragma once

#include <stdexcept>
#include <string>

namespace latdist {

// Exit-status families: validation -> 2, capacity/overflow -> 3.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class OverflowError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace latdist
