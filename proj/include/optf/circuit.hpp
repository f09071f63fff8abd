#pragma once

// A small textual language for operational circuits. Programs declare typed
// systems in a preamble, then name circuits built from bound primitives with
// '.' (serial, "g . f" applies f first), 'x' (parallel), and '+'
// (coarse-graining sum). The evaluator works on real coordinate matrices:
// a wire list [S1,...,Sk] spans the tensor product of the systems'
// coordinate spaces, so parallel composition is a Kronecker product.
//
//   program  := preamble decl* ;
//   preamble := ("system" IDENT "=" INT ";")* ;
//   decl     := "let" IDENT "=" expr ";" ;
//   expr     := sum ;     sum := serial ("+" serial)* ;
//   serial   := par ("." par)* ;      par := atom ("x" atom)* ;
//   atom     := IDENT | "id" "[" IDENT "]" | "(" expr ")" ;
//
// "system", "let", "id", and "x" are reserved words. Wire crossings are not
// inferred; a swap must be bound explicitly as a primitive.

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "optf/cone.hpp"
#include "optf/linalg.hpp"
#include "optf/report.hpp"
#include "optf/theory.hpp"

namespace optf {

struct SourcePos {
    int line = 0;
    int col = 0;
};

class CircuitError : public std::runtime_error {
  public:
    int line, col;
    CircuitError(const std::string &msg, int line_, int col_)
        : std::runtime_error("line " + std::to_string(line_) + ", col " + std::to_string(col_) + ": " + msg),
          line(line_),
          col(col_) {}
};

enum class ExprKind { Primitive, Identity, Serial, Parallel, Sum };

struct CircuitExpr;
using ExprPtr = std::shared_ptr<const CircuitExpr>;

struct CircuitExpr {
    ExprKind kind = ExprKind::Primitive;
    std::string name;  // Primitive: bound name; Identity: system label
    ExprPtr lhs, rhs;  // the two operands of Serial / Parallel / Sum
    SourcePos pos;
};

ExprPtr primitive_expr(std::string name, SourcePos pos = {});
ExprPtr identity_expr(std::string system, SourcePos pos = {});
ExprPtr serial_expr(ExprPtr g, ExprPtr f, SourcePos pos = {});  // g after f
ExprPtr parallel_expr(ExprPtr f, ExprPtr h, SourcePos pos = {});
ExprPtr sum_expr(ExprPtr a, ExprPtr b, SourcePos pos = {});

struct CircuitProgram {
    std::vector<std::pair<std::string, int>> systems;  // preamble, in source order
    std::vector<std::pair<std::string, ExprPtr>> decls;
};

CircuitProgram parse_circuit(const std::string &source);
std::string print_circuit(const CircuitProgram &p);

struct WireType {
    std::vector<std::string> in, out;
    friend bool operator==(const WireType &, const WireType &) = default;
};

// A bound primitive: matrix rows span the output wires, columns the input
// wires, in the declared system order (states are columns, effects rows).
struct PrimitiveBinding {
    std::vector<std::string> in, out;
    Mat m;
};

struct CircuitEnv {
    BackendKind kind = BackendKind::ComplexQT;
    std::map<std::string, int> systems;  // defaults; the program preamble takes precedence
    std::map<std::string, PrimitiveBinding> prims;
};

PrimitiveBinding bind_state(const std::string &system, const Element &x);
PrimitiveBinding bind_effect(const std::string &system, const EffectFunctional &f);
PrimitiveBinding bind_channel(const std::string &sys_in, const std::string &sys_out, const Channel &ch);

struct TypedCircuit {
    std::map<std::string, WireType> decl_types;
    std::map<std::string, int> systems;  // resolved system levels
};

// One bottom-up pass; declarations may reference earlier declarations.
TypedCircuit typecheck(const CircuitProgram &p, const CircuitEnv &env);

struct EvalValue {
    WireType type;
    Mat m;
    bool is_scalar() const { return m.rows == 1 && m.cols == 1; }
    double scalar() const;
};

EvalValue evaluate(const CircuitProgram &p, const CircuitEnv &env, const std::string &decl_name);

// Random-instance audit of the monoidal laws (interchange, serial and
// parallel associativity, identity neutrality) plus the probability range of
// a full scalar circuit, at levels up to 3, each to 1e-10.
CheckReport law_check(BackendKind kind, int n_instances, std::uint64_t seed = 1);

}  // namespace optf
