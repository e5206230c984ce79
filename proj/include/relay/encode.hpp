#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "relay/model.hpp"

namespace relay {

class EncodeError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parse failure for instance files; line is 1-based.
class ModelParseError : public std::runtime_error {
 public:
  ModelParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// CPLEX-LP text. Every term carries an explicit signed coefficient, rows
/// are named `<family>_<k>` with k counting within the family, all columns
/// appear in the Binary section in column order, and a feasibility variant
/// gets the placeholder objective `obj: 0`. Byte-deterministic.
std::string encode_lp(const Model01LP& m);

/// OPB competition text: `* #variable= N #constraint= M` header, optional
/// `min:` line, `>=`-only constraints (<= negated, = split in two, both
/// counted in M), 1-based variables x1..xN. Objective coefficients are
/// fixed-point: multiplied by 10^4 and rounded half-to-even; a coefficient
/// that is not integral after scaling is an EncodeError. parse_model and the
/// PB output parser divide by the same factor, so objective values compare
/// directly across encodings.
std::string encode_opb(const Model01LP& m);

/// SMT-LIB2 with the OMT minimize extension: QF_LIA, one Int per column
/// constrained to [0,1], `(minimize ...)` plus `(get-objectives)` only when
/// optimizing. Cost coefficients stay real: integral values print as
/// integer literals, anything else as a decimal.
std::string encode_smt2(const Model01LP& m);

enum class InstanceFormat { LP, OPB };

/// Read back the subset emitted by encode_lp / encode_opb. LP recovers the
/// full model including variable roles from the semantic names; OPB recovers
/// columns only (roles are in the varmap sidecar) with objective
/// coefficients unscaled back from fixed point. Throws ModelParseError.
Model01LP parse_model(std::string_view text, InstanceFormat format);

/// Sidecar `name,column` CSV mapping semantic variable names to columns.
std::string varmap_csv(const Model01LP& m);

/// Per-column names: semantic names when the var table is populated,
/// positional x1..xN otherwise (models read back from OPB).
std::vector<std::string> model_var_names(const Model01LP& m);

}  // namespace relay
