#pragma once

#include <stdexcept>
#include <string>

namespace relay_sinr {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

// Configuration or schema violation.
class ConfigError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

// Infinite series failed to settle within the allowed depth.
class SeriesDivergence : public std::runtime_error
{
  public:
    SeriesDivergence(const std::string& what, double last_term, int k)
        : std::runtime_error(what), last_term_(last_term), k_(k)
    {
    }

    double last_term() const noexcept { return last_term_; }
    int index() const noexcept { return k_; }

  private:
    double last_term_;
    int k_;
};

// Adaptive quadrature missed its tolerance.
class QuadratureError : public std::runtime_error
{
  public:
    QuadratureError(const std::string& what, double error_estimate)
        : std::runtime_error(what), error_estimate_(error_estimate)
    {
    }

    double error_estimate() const noexcept { return error_estimate_; }

  private:
    double error_estimate_;
};

// Partial-fraction expansion with nearly coincident poles.
class IllConditioned : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace relay_sinr
