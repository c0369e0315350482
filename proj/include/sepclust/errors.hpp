#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sepclust {

/// A validity index hit a zero denominator (e.g. duplicate centers, all
/// clusters singleton). Distinct from "bad but scorable" schemes: callers
/// that sweep over candidate partitions must be able to tell the two apart.
class UndefinedIndexError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Center recomputation found a cluster with no members.
class EmptyClusterError : public std::runtime_error {
public:
    EmptyClusterError(std::size_t cluster, const std::string& what)
        : std::runtime_error(what), cluster_(cluster) {}
    std::size_t cluster() const { return cluster_; }

private:
    std::size_t cluster_;
};

/// CSV ingestion failure, carrying the 1-based row/column of the offender
/// (0 when the failure is not tied to a cell, e.g. a missing file).
class CsvError : public std::runtime_error {
public:
    CsvError(const std::string& what, std::size_t row = 0, std::size_t col = 0)
        : std::runtime_error(what), row_(row), col_(col) {}
    std::size_t row() const { return row_; }
    std::size_t col() const { return col_; }

private:
    std::size_t row_;
    std::size_t col_;
};

} // namespace sepclust
