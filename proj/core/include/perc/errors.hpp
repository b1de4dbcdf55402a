#pragma once

#include <stdexcept>
#include <string>

namespace perc {

// Bad arguments or contract violations detected before any computation runs.
class invalid_parameter : public std::invalid_argument {
public:
  explicit invalid_parameter(const std::string& what) : std::invalid_argument(what) {}
};

// Instance is too large for the requested exact method.
class size_limit : public std::runtime_error {
public:
  explicit size_limit(const std::string& what) : std::runtime_error(what) {}
};

// The graph lacks structure the operation needs (e.g. declared edge orbits).
class unsupported_graph : public std::runtime_error {
public:
  explicit unsupported_graph(const std::string& what) : std::runtime_error(what) {}
};

// A grid or discretization is too coarse to answer the question asked.
class resolution_error : public std::runtime_error {
public:
  explicit resolution_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace perc
