#pragma once

#include <stdexcept>
#include <string>

namespace bfr {

// Every failure the library reports on purpose derives from Error, so the
// CLI can tell domain failures apart from usage mistakes and bugs.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ArithmeticError : public Error {
public:
    using Error::Error;
};

// Elements or codes from different fields were combined.
class ConfigError : public Error {
public:
    using Error::Error;
};

// A parameter set violates a named constraint.
class ParamError : public Error {
public:
    ParamError(const std::string& constraint, const std::string& detail)
        : Error(constraint + ": " + detail), constraint_(constraint) {}
    const std::string& constraint() const { return constraint_; }

private:
    std::string constraint_;
};

// Caller-side misuse: wrong counts, duplicate indices, bad helper sets.
class PreconditionError : public Error {
public:
    using Error::Error;
};

class UnrecoverableErasure : public Error {
public:
    UnrecoverableErasure(int have, int need)
        : Error("unrecoverable erasure: " + std::to_string(have) + " of " +
                std::to_string(need) + " required symbols available"),
          have_(have), need_(need) {}
    int have() const { return have_; }
    int need() const { return need_; }

private:
    int have_, need_;
};

class CorruptionError : public Error {
public:
    using Error::Error;
};

// Gabidulin erasure decoding saw fewer than K independent evaluation points.
class RankErasure : public Error {
public:
    RankErasure(int rank, int need)
        : Error("rank erasure: achieved rank " + std::to_string(rank) + " < " +
                std::to_string(need)),
          rank_(rank), need_(need) {}
    int rank() const { return rank_; }
    int need() const { return need_; }

private:
    int rank_, need_;
};

// A per-partition decode failed inside a composite code.
class PartitionDecodeError : public Error {
public:
    PartitionDecodeError(int partition, const std::string& why)
        : Error("partition " + std::to_string(partition) + ": " + why), partition_(partition) {}
    int partition() const { return partition_; }

private:
    int partition_;
};

class FormatError : public Error {
public:
    using Error::Error;
};

}  // namespace bfr
