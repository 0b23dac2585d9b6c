#ifndef FINRES_ERROR_HPP
#define FINRES_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace finres {

// Invalid argument or violated precondition (empty interval, index out of
// range, division by an interval straddling zero, ...).
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// An endpoint left the finite binary64 range.
class arithmetic_overflow : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

// A caller-checked precondition of an algorithm does not hold.
class contract_violation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Memory budget or vertex index width exhausted.
class budget_exceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class parse_error : public std::runtime_error {
public:
    parse_error(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line)
    {
    }

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace finres

#endif
