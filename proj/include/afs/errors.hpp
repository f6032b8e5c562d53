#pragma once

#include <stdexcept>
#include <string>

namespace afs {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class ConstantColumn : public Error {
 public:
  explicit ConstantColumn(int column)
      : Error("column " + std::to_string(column) + " has zero variance"),
        column(column) {}
  int column;
};

class SingularGram : public Error {
 public:
  using Error::Error;
};

class EmptyActiveSet : public Error {
 public:
  EmptyActiveSet() : Error("active set is empty") {}
};

class InvalidConfig : public Error {
 public:
  using Error::Error;
};

class NonOrthogonalDesign : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  NoConvergence(double lambda, int sweeps)
      : Error("coordinate descent did not converge at lambda=" +
              std::to_string(lambda) + " after " + std::to_string(sweeps) +
              " sweeps"),
        lambda(lambda) {}
  double lambda;
};

class DegenerateDirection : public Error {
 public:
  using Error::Error;
};

class ScheduleExhausted : public Error {
 public:
  using Error::Error;
};

class NonBinaryResponse : public Error {
 public:
  using Error::Error;
};

class IrlsSingular : public Error {
 public:
  using Error::Error;
};

class FoldTooSmall : public Error {
 public:
  using Error::Error;
};

class InvalidCovariance : public Error {
 public:
  using Error::Error;
};

class SnrUndefined : public Error {
 public:
  SnrUndefined() : Error("snr target is undefined for beta = 0") {}
};

class InfeasibleEvent : public Error {
 public:
  using Error::Error;
};

class MissingColumn : public Error {
 public:
  explicit MissingColumn(const std::string& name)
      : Error("column '" + name + "' not found") {}
};

class NonNumericCell : public Error {
 public:
  NonNumericCell(int row, const std::string& column, const std::string& cell)
      : Error("row " + std::to_string(row) + ", column '" + column +
              "': cannot parse '" + cell + "' as a number"),
        row(row),
        column(column) {}
  int row;
  std::string column;
};

class EmptyDataset : public Error {
 public:
  using Error::Error;
};

class SplitTooSmall : public Error {
 public:
  using Error::Error;
};

}  // namespace afs
