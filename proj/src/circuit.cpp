#include "optf/circuit.hpp"

#include <cctype>
#include <sstream>

namespace optf {

namespace {

ExprPtr make_expr(ExprKind k, std::string name, ExprPtr l, ExprPtr r, SourcePos pos) {
    auto e = std::make_shared<CircuitExpr>();
    e->kind = k;
    e->name = std::move(name);
    e->lhs = std::move(l);
    e->rhs = std::move(r);
    e->pos = pos;
    return e;
}

enum class Tok { KwSystem, KwLet, KwId, Ident, Int, Eq, Semi, Dot, Par, Plus, LParen, RParen, LBrack, RBrack, End };

struct Token {
    Tok t = Tok::End;
    std::string text;
    int value = 0;
    int line = 1, col = 1;
};

struct Lexer {
    const std::string &src;
    size_t i = 0;
    int line = 1, col = 1;

    explicit Lexer(const std::string &s) : src(s) {}

    void advance() {
        if (src[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++i;
    }

    Token next() {
        while (i < src.size() && std::isspace((unsigned char)src[i])) advance();
        Token tk;
        tk.line = line;
        tk.col = col;
        if (i >= src.size()) return tk;
        char c = src[i];
        if (std::isalpha((unsigned char)c) || c == '_') {
            std::string w;
            while (i < src.size() && (std::isalnum((unsigned char)src[i]) || src[i] == '_')) {
                w += src[i];
                advance();
            }
            if (w == "system") tk.t = Tok::KwSystem;
            else if (w == "let") tk.t = Tok::KwLet;
            else if (w == "id") tk.t = Tok::KwId;
            else if (w == "x") tk.t = Tok::Par;
            else tk.t = Tok::Ident;
            tk.text = std::move(w);
            return tk;
        }
        if (std::isdigit((unsigned char)c)) {
            int v = 0;
            while (i < src.size() && std::isdigit((unsigned char)src[i])) {
                v = v * 10 + (src[i] - '0');
                advance();
            }
            tk.t = Tok::Int;
            tk.value = v;
            return tk;
        }
        advance();
        switch (c) {
            case '=': tk.t = Tok::Eq; return tk;
            case ';': tk.t = Tok::Semi; return tk;
            case '.': tk.t = Tok::Dot; return tk;
            case '+': tk.t = Tok::Plus; return tk;
            case '(': tk.t = Tok::LParen; return tk;
            case ')': tk.t = Tok::RParen; return tk;
            case '[': tk.t = Tok::LBrack; return tk;
            case ']': tk.t = Tok::RBrack; return tk;
        }
        throw CircuitError(std::string("unexpected character '") + c + "'", tk.line, tk.col);
    }
};

const char *token_label(Tok t) {
    switch (t) {
        case Tok::KwSystem: return "'system'";
        case Tok::KwLet: return "'let'";
        case Tok::KwId: return "'id'";
        case Tok::Ident: return "identifier";
        case Tok::Int: return "integer";
        case Tok::Eq: return "'='";
        case Tok::Semi: return "';'";
        case Tok::Dot: return "'.'";
        case Tok::Par: return "'x'";
        case Tok::Plus: return "'+'";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::LBrack: return "'['";
        case Tok::RBrack: return "']'";
        case Tok::End: return "end of input";
    }
    return "?";
}

struct Parser {
    Lexer lex;
    Token cur;

    explicit Parser(const std::string &src) : lex(src) { cur = lex.next(); }

    [[noreturn]] void fail(const std::string &msg) { throw CircuitError(msg, cur.line, cur.col); }

    Token eat(Tok t) {
        if (cur.t != t) fail(std::string("expected ") + token_label(t) + ", got " + token_label(cur.t));
        Token out = cur;
        cur = lex.next();
        return out;
    }

    ExprPtr atom() {
        SourcePos pos{cur.line, cur.col};
        if (cur.t == Tok::Ident) {
            std::string name = eat(Tok::Ident).text;
            return make_expr(ExprKind::Primitive, std::move(name), nullptr, nullptr, pos);
        }
        if (cur.t == Tok::KwId) {
            eat(Tok::KwId);
            eat(Tok::LBrack);
            std::string sys = eat(Tok::Ident).text;
            eat(Tok::RBrack);
            return make_expr(ExprKind::Identity, std::move(sys), nullptr, nullptr, pos);
        }
        if (cur.t == Tok::LParen) {
            eat(Tok::LParen);
            ExprPtr e = sum();
            eat(Tok::RParen);
            return e;
        }
        fail(std::string("expected an expression, got ") + token_label(cur.t));
    }

    ExprPtr par() {
        ExprPtr e = atom();
        while (cur.t == Tok::Par) {
            SourcePos pos{cur.line, cur.col};
            eat(Tok::Par);
            e = make_expr(ExprKind::Parallel, "", e, atom(), pos);
        }
        return e;
    }

    ExprPtr serial() {
        ExprPtr e = par();
        while (cur.t == Tok::Dot) {
            SourcePos pos{cur.line, cur.col};
            eat(Tok::Dot);
            e = make_expr(ExprKind::Serial, "", e, par(), pos);
        }
        return e;
    }

    ExprPtr sum() {
        ExprPtr e = serial();
        while (cur.t == Tok::Plus) {
            SourcePos pos{cur.line, cur.col};
            eat(Tok::Plus);
            e = make_expr(ExprKind::Sum, "", e, serial(), pos);
        }
        return e;
    }

    CircuitProgram program() {
        CircuitProgram p;
        while (cur.t == Tok::KwSystem) {
            eat(Tok::KwSystem);
            Token name = eat(Tok::Ident);
            eat(Tok::Eq);
            Token level = eat(Tok::Int);
            eat(Tok::Semi);
            for (const auto &[n, l] : p.systems)
                if (n == name.text)
                    throw CircuitError("duplicate system '" + name.text + "'", name.line, name.col);
            p.systems.push_back({name.text, level.value});
        }
        while (cur.t == Tok::KwLet) {
            eat(Tok::KwLet);
            Token name = eat(Tok::Ident);
            eat(Tok::Eq);
            ExprPtr e = sum();
            eat(Tok::Semi);
            for (const auto &[n, x] : p.decls)
                if (n == name.text)
                    throw CircuitError("duplicate declaration of '" + name.text + "'", name.line, name.col);
            p.decls.push_back({name.text, std::move(e)});
        }
        if (cur.t != Tok::End) fail(std::string("expected 'let', got ") + token_label(cur.t));
        return p;
    }
};

int prec(ExprKind k) {
    switch (k) {
        case ExprKind::Sum: return 1;
        case ExprKind::Serial: return 2;
        case ExprKind::Parallel: return 3;
        default: return 4;
    }
}

void print_expr(std::ostringstream &os, const ExprPtr &e, int parent_prec, bool right_slot) {
    int p = prec(e->kind);
    // parens when binding looser than the context, or to keep a right-nested
    // chain from reassociating to the left on reparse
    bool need = p < parent_prec || (p == parent_prec && right_slot && p < 4);
    if (need) os << "(";
    switch (e->kind) {
        case ExprKind::Primitive: os << e->name; break;
        case ExprKind::Identity: os << "id[" << e->name << "]"; break;
        case ExprKind::Serial:
        case ExprKind::Parallel:
        case ExprKind::Sum: {
            const char *op = e->kind == ExprKind::Serial ? " . " : e->kind == ExprKind::Parallel ? " x " : " + ";
            print_expr(os, e->lhs, p, false);
            os << op;
            print_expr(os, e->rhs, p, true);
            break;
        }
    }
    if (need) os << ")";
}

std::string join_systems(const std::vector<std::string> &v) {
    std::string s = "[";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
    return s + "]";
}

struct TypeCtx {
    const CircuitEnv &env;
    std::map<std::string, int> systems;
    std::map<std::string, WireType> decls;

    void require_system(const std::string &name, SourcePos pos) const {
        if (!systems.count(name)) throw CircuitError("unknown system '" + name + "'", pos.line, pos.col);
    }

    WireType type_of(const ExprPtr &e) const {
        switch (e->kind) {
            case ExprKind::Primitive: {
                auto d = decls.find(e->name);
                if (d != decls.end()) return d->second;
                auto b = env.prims.find(e->name);
                if (b == env.prims.end())
                    throw CircuitError("unknown name '" + e->name + "'", e->pos.line, e->pos.col);
                for (const auto &s : b->second.in) require_system(s, e->pos);
                for (const auto &s : b->second.out) require_system(s, e->pos);
                return {b->second.in, b->second.out};
            }
            case ExprKind::Identity: {
                require_system(e->name, e->pos);
                return {{e->name}, {e->name}};
            }
            case ExprKind::Serial: {
                WireType g = type_of(e->lhs), f = type_of(e->rhs);
                if (f.out != g.in)
                    throw CircuitError("wire mismatch: expected " + join_systems(g.in) + ", got " +
                                           join_systems(f.out),
                                       e->pos.line, e->pos.col);
                return {f.in, g.out};
            }
            case ExprKind::Parallel: {
                WireType f = type_of(e->lhs), h = type_of(e->rhs);
                WireType t = f;
                t.in.insert(t.in.end(), h.in.begin(), h.in.end());
                t.out.insert(t.out.end(), h.out.begin(), h.out.end());
                return t;
            }
            case ExprKind::Sum: {
                WireType a = type_of(e->lhs), b = type_of(e->rhs);
                if (!(a == b))
                    throw CircuitError("sum operands differ: " + join_systems(a.in) + "->" + join_systems(a.out) +
                                           " vs " + join_systems(b.in) + "->" + join_systems(b.out),
                                       e->pos.line, e->pos.col);
                return a;
            }
        }
        throw CircuitError("malformed expression", e->pos.line, e->pos.col);
    }
};

}  // namespace

ExprPtr primitive_expr(std::string name, SourcePos pos) {
    return make_expr(ExprKind::Primitive, std::move(name), nullptr, nullptr, pos);
}
ExprPtr identity_expr(std::string system, SourcePos pos) {
    return make_expr(ExprKind::Identity, std::move(system), nullptr, nullptr, pos);
}
ExprPtr serial_expr(ExprPtr g, ExprPtr f, SourcePos pos) {
    return make_expr(ExprKind::Serial, "", std::move(g), std::move(f), pos);
}
ExprPtr parallel_expr(ExprPtr f, ExprPtr h, SourcePos pos) {
    return make_expr(ExprKind::Parallel, "", std::move(f), std::move(h), pos);
}
ExprPtr sum_expr(ExprPtr a, ExprPtr b, SourcePos pos) {
    return make_expr(ExprKind::Sum, "", std::move(a), std::move(b), pos);
}

CircuitProgram parse_circuit(const std::string &source) { return Parser(source).program(); }

std::string print_circuit(const CircuitProgram &p) {
    std::ostringstream os;
    for (const auto &[name, level] : p.systems) os << "system " << name << " = " << level << ";\n";
    for (const auto &[name, expr] : p.decls) {
        os << "let " << name << " = ";
        print_expr(os, expr, 0, false);
        os << ";\n";
    }
    return os.str();
}

PrimitiveBinding bind_state(const std::string &system, const Element &x) {
    Mat m((int)x.coords.size(), 1);
    for (int i = 0; i < m.rows; ++i) m(i, 0) = x.coords[i];
    return {{}, {system}, std::move(m)};
}

PrimitiveBinding bind_effect(const std::string &system, const EffectFunctional &f) {
    const auto &g = f.riesz.alg->gram_diag();
    Mat m(1, (int)f.riesz.coords.size());
    for (int j = 0; j < m.cols; ++j) m(0, j) = f.riesz.coords[j] * g[j];
    return {{system}, {}, std::move(m)};
}

PrimitiveBinding bind_channel(const std::string &sys_in, const std::string &sys_out, const Channel &ch) {
    return {{sys_in}, {sys_out}, ch.map.m};
}

TypedCircuit typecheck(const CircuitProgram &p, const CircuitEnv &env) {
    TypeCtx ctx{env, env.systems, {}};
    for (const auto &[name, level] : p.systems) {
        if (level < 1) throw CircuitError("system '" + name + "' needs a positive level", 0, 0);
        auto it = ctx.systems.find(name);
        if (it != ctx.systems.end() && it->second != level)
            throw CircuitError("system '" + name + "' level conflicts with its binding", 0, 0);
        ctx.systems[name] = level;
    }
    TypedCircuit out;
    for (const auto &[name, expr] : p.decls) {
        WireType t = ctx.type_of(expr);
        ctx.decls[name] = t;
        out.decl_types[name] = std::move(t);
    }
    out.systems = std::move(ctx.systems);
    return out;
}

double EvalValue::scalar() const {
    if (!is_scalar()) throw std::logic_error("EvalValue: not a scalar");
    return m(0, 0);
}

namespace {

struct EvalCtx {
    const CircuitEnv &env;
    const std::map<std::string, int> &systems;
    std::map<std::string, EvalValue> decls;

    int wire_dim(const std::vector<std::string> &wires) const {
        int d = 1;
        for (const auto &s : wires) d *= system_algebra(env.kind, systems.at(s))->dim();
        return d;
    }

    EvalValue eval(const ExprPtr &e) const {
        switch (e->kind) {
            case ExprKind::Primitive: {
                auto d = decls.find(e->name);
                if (d != decls.end()) return d->second;
                const PrimitiveBinding &b = env.prims.at(e->name);
                int want_rows = wire_dim(b.out), want_cols = wire_dim(b.in);
                if (b.m.rows != want_rows || b.m.cols != want_cols)
                    throw CircuitError("binding mismatch for '" + e->name + "': matrix is " +
                                           std::to_string(b.m.rows) + "x" + std::to_string(b.m.cols) +
                                           ", wire type needs " + std::to_string(want_rows) + "x" +
                                           std::to_string(want_cols),
                                       e->pos.line, e->pos.col);
                return {{b.in, b.out}, b.m};
            }
            case ExprKind::Identity: {
                int d = wire_dim({e->name});
                return {{{e->name}, {e->name}}, Mat::identity(d)};
            }
            case ExprKind::Serial: {
                EvalValue g = eval(e->lhs), f = eval(e->rhs);
                return {{f.type.in, g.type.out}, g.m * f.m};
            }
            case ExprKind::Parallel: {
                EvalValue f = eval(e->lhs), h = eval(e->rhs);
                WireType t = f.type;
                t.in.insert(t.in.end(), h.type.in.begin(), h.type.in.end());
                t.out.insert(t.out.end(), h.type.out.begin(), h.type.out.end());
                return {std::move(t), kron(f.m, h.m)};
            }
            case ExprKind::Sum: {
                EvalValue a = eval(e->lhs), b = eval(e->rhs);
                return {a.type, a.m + b.m};
            }
        }
        throw CircuitError("malformed expression", e->pos.line, e->pos.col);
    }
};

}  // namespace

EvalValue evaluate(const CircuitProgram &p, const CircuitEnv &env, const std::string &decl_name) {
    TypedCircuit tc = typecheck(p, env);  // surfaces name/wire errors with positions
    EvalCtx ctx{env, tc.systems, {}};
    for (const auto &[name, expr] : p.decls) {
        EvalValue v = ctx.eval(expr);
        if (name == decl_name) return v;
        ctx.decls[name] = std::move(v);
    }
    throw CircuitError("no declaration named '" + decl_name + "'", 0, 0);
}

CheckReport law_check(BackendKind kind, int n_instances, std::uint64_t seed) {
    CheckReport r;
    r.check = "law_check";
    r.backend = backend_name(kind);
    r.levels = {1, 2, 3};
    r.samples = n_instances;
    r.seed = seed;
    r.pass = true;
    r.tolerances["law"] = 1e-10;
    r.tolerances["probability_slack"] = 1e-9;
    Rng rng(seed);

    for (int it = 0; it < n_instances; ++it) {
        int la = rng.uniform_int(1, 3), lp = rng.uniform_int(1, 3);
        CircuitEnv env;
        env.kind = kind;
        env.prims["f"] = bind_channel("A", "A", random_channel(kind, la, rng));
        env.prims["g"] = bind_channel("A", "A", random_channel(kind, la, rng));
        env.prims["h"] = bind_channel("A", "A", random_channel(kind, la, rng));
        env.prims["f2"] = bind_channel("P", "P", random_channel(kind, lp, rng));
        env.prims["g2"] = bind_channel("P", "P", random_channel(kind, lp, rng));
        env.prims["rho"] = bind_state("A", random_density(kind, la, rng));
        env.prims["sig"] = bind_state("P", random_density(kind, lp, rng));
        env.prims["eff"] = bind_effect("A", dagger(0.5 * random_density(kind, la, rng)));
        env.prims["eff2"] = bind_effect("P", dagger(0.5 * random_density(kind, lp, rng)));

        CircuitProgram p = parse_circuit(
            "system A = " + std::to_string(la) + ";\nsystem P = " + std::to_string(lp) +
            ";\n"
            "let lhs_i = (g x g2) . (f x f2);\n"
            "let rhs_i = (g . f) x (g2 . f2);\n"
            "let lhs_s = (h . g) . f;\n"
            "let rhs_s = h . (g . f);\n"
            "let lhs_p = (f x g) x h;\n"
            "let rhs_p = f x (g x h);\n"
            "let lhs_u = id[A] . f;\n"
            "let rhs_u = f . id[A];\n"
            "let prob = (eff x eff2) . lhs_i . (rho x sig);\n");

        auto diff = [&](const char *a, const char *b) {
            Mat ma = evaluate(p, env, a).m, mb = evaluate(p, env, b).m;
            double w = 0;
            for (int i = 0; i < ma.rows; ++i)
                for (int j = 0; j < ma.cols; ++j) w = std::max(w, std::abs(ma(i, j) - mb(i, j)));
            return w;
        };
        auto flag = [&](const std::string &law, double w) {
            if (w <= 1e-10) return;
            r.pass = false;
            r.witnesses.push_back({law + "@" + std::to_string(it), backend_name(kind), {w}});
        };

        flag("interchange", diff("lhs_i", "rhs_i"));
        flag("serial_associativity", diff("lhs_s", "rhs_s"));
        flag("parallel_associativity", diff("lhs_p", "rhs_p"));

        Mat fm = env.prims["f"].m;
        auto unit_diff = [&](const char *name) {
            Mat mu = evaluate(p, env, name).m;
            double w = 0;
            for (int i = 0; i < mu.rows; ++i)
                for (int j = 0; j < mu.cols; ++j) w = std::max(w, std::abs(mu(i, j) - fm(i, j)));
            return w;
        };
        flag("left_unit", unit_diff("lhs_u"));
        flag("right_unit", unit_diff("rhs_u"));

        double pr = evaluate(p, env, "prob").scalar();
        if (pr < -1e-9 || pr > 1.0 + 1e-9) {
            r.pass = false;
            r.witnesses.push_back({"probability_range@" + std::to_string(it), backend_name(kind), {pr}});
        }
    }
    return r;
}

}  // namespace optf
