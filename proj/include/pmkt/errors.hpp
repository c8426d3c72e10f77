#pragma once

#include <stdexcept>
#include <string>

namespace pmkt {

/// Invalid model or protocol parameters, malformed config files, mismatched
/// geometry (e.g. arcs from different market circumferences).
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

/// Operation requires more firms than the population holds.
class population_error : public std::runtime_error {
public:
    explicit population_error(const std::string& what) : std::runtime_error(what) {}
};

/// A statistic was requested from a record that has no usable samples.
class empty_record_error : public std::runtime_error {
public:
    explicit empty_record_error(const std::string& what) : std::runtime_error(what) {}
};

/// A per-firm trajectory (or similar) was requested but never recorded.
class recorder_error : public std::runtime_error {
public:
    explicit recorder_error(const std::string& what) : std::runtime_error(what) {}
};

/// Power-law fit could not be performed on the given window.
class fit_error : public std::runtime_error {
public:
    explicit fit_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace pmkt
