#ifndef HAPMONO_BUDGET_HPP
#define HAPMONO_BUDGET_HPP

#include <chrono>
#include <cstdint>
#include <limits>
#include <string>

#include "hapmono/errors.hpp"

namespace hapmono {

// Wall-clock plus node-count allowance for one search.  A Budget is owned by
// the search that consumes it; copy it to give a sub-search its own counter.
class Budget {
public:
    using clock = std::chrono::steady_clock;

    Budget() = default;

    static Budget unlimited() { return Budget{}; }

    static Budget seconds(double s,
                          std::uint64_t nodes = std::numeric_limits<std::uint64_t>::max()) {
        Budget b;
        b.deadline_ = clock::now() + std::chrono::duration_cast<clock::duration>(
                                         std::chrono::duration<double>(s));
        b.node_limit_ = nodes;
        return b;
    }

    static Budget nodes(std::uint64_t n) {
        Budget b;
        b.node_limit_ = n;
        return b;
    }

    // Charges `n` units of work.  The clock is sampled every 4096 nodes.
    bool charge(std::uint64_t n = 1) noexcept {
        used_ += n;
        if (used_ > node_limit_) exhausted_ = true;
        if (!exhausted_ && deadline_ && (used_ >> 12) != (last_check_ >> 12)) {
            last_check_ = used_;
            if (clock::now() > *deadline_) exhausted_ = true;
        }
        return !exhausted_;
    }

    // Same as charge() but throws budget_exceeded when exhausted.
    void spend(std::uint64_t n, const char* what) {
        if (!charge(n)) throw budget_exceeded(std::string(what) + ": budget exhausted");
    }

    bool exhausted() const noexcept { return exhausted_; }
    std::uint64_t used() const noexcept { return used_; }

private:
    struct Deadline {
        clock::time_point t;
        explicit operator bool() const noexcept { return t != clock::time_point::max(); }
        const clock::time_point& operator*() const noexcept { return t; }
        Deadline& operator=(clock::time_point p) noexcept {
            t = p;
            return *this;
        }
    };

    Deadline deadline_{clock::time_point::max()};
    std::uint64_t node_limit_ = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t used_ = 0;
    std::uint64_t last_check_ = 0;
    bool exhausted_ = false;
};

}  // namespace hapmono

#endif
