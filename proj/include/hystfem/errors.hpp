// Copyright 2026 The hystfem Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HYSTFEM_ERRORS_HPP
#define HYSTFEM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hystfem
{

class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error
{
public:
  using Error::Error;
};

// Malformed configuration text; the message carries line/column context.
class ParseError : public Error
{
public:
  using Error::Error;
};

// Well-formed configuration with an invalid or missing field.
class ValidationError : public Error
{
public:
  ValidationError(const std::string &field, const std::string &what)
    : Error("invalid field '" + field + "': " + what), field_(field)
  {
  }
  const std::string &field() const { return field_; }

private:
  std::string field_;
};

class IoError : public Error
{
public:
  using Error::Error;
};

class SingularMatrix : public Error
{
public:
  using Error::Error;
};

class PointOutsideDomain : public Error
{
public:
  using Error::Error;
};

// Nonlinear solve failed to converge; carries the step or slice context.
class SolverError : public Error
{
public:
  using Error::Error;
};

}  // namespace hystfem

#endif  // HYSTFEM_ERRORS_HPP
