#pragma once

#include <stdexcept>
#include <string>

namespace fedrep {

/// Shape or size mismatch between operands. Message names both shapes.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Input value outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Malformed input file or record.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid parameter value (out of range, empty set, non-divisible factor).
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Dataset too small or otherwise unsplittable into the requested partition.
class PartitionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Training diverged or produced a non-finite loss. Message carries the
/// hospital / epoch / batch context when raised inside the federation engine.
class TrainingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Filesystem failure; message includes the offending path.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace fedrep
