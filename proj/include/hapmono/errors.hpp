#ifndef HAPMONO_ERRORS_HPP
#define HAPMONO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hapmono {

// Base class for every failure the library reports by exception.  Verdicts
// such as "not a member" or "no schedule" are values, never exceptions.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class invalid_input : public error {
public:
    using error::error;
};

class parse_error : public error {
public:
    parse_error(int line, const std::string& what)
        : error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

class not_regular : public error {
public:
    using error::error;
};

class duplicate_edge : public error {
public:
    using error::error;
};

class self_loop : public error {
public:
    using error::error;
};

class dimension_mismatch : public error {
public:
    using error::error;
};

class precondition_violated : public error {
public:
    using error::error;
};

class day_count_mismatch : public error {
public:
    using error::error;
};

class team_count_mismatch : public error {
public:
    using error::error;
};

class not_a_problem_vector : public error {
public:
    using error::error;
};

// Thrown when a search or enumeration runs out of its time or node budget.
// Callers that can report "undecided" catch this; nothing ever converts it
// into a definite verdict.
class budget_exceeded : public error {
public:
    using error::error;
};

}  // namespace hapmono

#endif
