#ifndef BOSE_EOS_ERRORS_HPP
#define BOSE_EOS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bose_eos
{

/// Base class for everything this library throws.
class error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Input outside the physical domain (non-positive mass/density, 1 + 8πγr ≤ 0, ...).
class domain_error : public error
{
public:
    using error::error;
};

class convergence_error : public error
{
public:
    using error::error;
};

class quadrature_failure : public error
{
public:
    using error::error;
};

class non_positive_compressibility : public error
{
public:
    using error::error;
};

class non_unit_constant_term : public error
{
public:
    using error::error;
};

} // namespace bose_eos

#endif // BOSE_EOS_ERRORS_HPP
