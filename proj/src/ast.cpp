#include "matlang/ast.hpp"

#include <stdexcept>

namespace matlang {

namespace {
ExprPtr make(Expr::Kind k, std::string name, std::string name2, std::vector<ExprPtr> args) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->name = std::move(name);
    e->name2 = std::move(name2);
    e->args = std::move(args);
    return e;
}
}  // namespace

ExprPtr var(std::string name) { return make(Expr::Kind::Var, std::move(name), {}, {}); }
ExprPtr let_(std::string name, ExprPtr bound, ExprPtr body) {
    return make(Expr::Kind::Let, std::move(name), {}, {std::move(bound), std::move(body)});
}
ExprPtr transpose(ExprPtr e) { return make(Expr::Kind::Transpose, {}, {}, {std::move(e)}); }
ExprPtr ones(ExprPtr e) { return make(Expr::Kind::Ones, {}, {}, {std::move(e)}); }
ExprPtr diag(ExprPtr e) { return make(Expr::Kind::Diag, {}, {}, {std::move(e)}); }
ExprPtr matmul(ExprPtr a, ExprPtr b) {
    return make(Expr::Kind::MatMul, {}, {}, {std::move(a), std::move(b)});
}
ExprPtr apply(std::string fn, std::vector<ExprPtr> args) {
    if (args.empty()) throw std::invalid_argument("apply needs at least one argument");
    return make(Expr::Kind::Apply, std::move(fn), {}, std::move(args));
}
ExprPtr inv(ExprPtr e) { return make(Expr::Kind::Inv, {}, {}, {std::move(e)}); }
ExprPtr eigen(ExprPtr e) { return make(Expr::Kind::Eigen, {}, {}, {std::move(e)}); }
ExprPtr eigenpair(std::string basis, std::string diag, ExprPtr e, ExprPtr body) {
    return make(Expr::Kind::EigenPair, std::move(basis), std::move(diag),
                {std::move(e), std::move(body)});
}

bool equal(const ExprPtr& a, const ExprPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind || a->name != b->name || a->name2 != b->name2 ||
        a->args.size() != b->args.size())
        return false;
    for (size_t i = 0; i < a->args.size(); ++i)
        if (!equal(a->args[i], b->args[i])) return false;
    return true;
}

long node_count(const ExprPtr& e) {
    long n = 1;
    for (auto& a : e->args) n += node_count(a);
    return n;
}

static void collect_names(const ExprPtr& e, std::set<std::string>& out) {
    switch (e->kind) {
        case Expr::Kind::Var:
        case Expr::Kind::Let:
            out.insert(e->name);
            break;
        case Expr::Kind::EigenPair:
            out.insert(e->name);
            out.insert(e->name2);
            break;
        default:
            break;
    }
    for (auto& a : e->args) collect_names(a, out);
}

std::set<std::string> all_names(const ExprPtr& e) {
    std::set<std::string> out;
    collect_names(e, out);
    return out;
}

namespace {

std::string fresh_name(const std::string& base, std::set<std::string>& used) {
    for (long k = 0;; ++k) {
        std::string cand = "_" + base + std::to_string(k);
        if (!used.count(cand)) {
            used.insert(cand);
            return cand;
        }
    }
}

/// The MATLANG expression recovering diag(eigenvalues) from matrix `a` and
/// eigenbasis `b` (both variable names), following the entrywise-division
/// construction: D = (a.b) / b pointwise, multiplicities from nonzero counts
/// of b, column sums divided by multiplicities, conjugate-corrected transpose
/// back into a column, diag at the end. All divisions send 0/0 to 0, so a
/// zero basis yields the zero diagonal.
ExprPtr eigenvalue_recovery(const std::string& a, const std::string& b) {
    ExprPtr d = apply("div", {matmul(var(a), var(b)), var(b)});
    ExprPtr z = apply("ne0", {var(b)});
    ExprPtr row_ones = transpose(ones(var(a)));          // 1 x n
    ExprPtr counts = matmul(row_ones, z);                // 1 x n
    ExprPtr sums = matmul(row_ones, d);                  // 1 x n
    ExprPtr lam_row = apply("div", {sums, counts});      // 1 x n
    ExprPtr lam_col = apply("conj", {transpose(lam_row)});
    return diag(lam_col);
}

ExprPtr desugar_rec(const ExprPtr& e, std::set<std::string>& used) {
    std::vector<ExprPtr> args;
    args.reserve(e->args.size());
    for (auto& a : e->args) args.push_back(desugar_rec(a, used));

    if (e->kind != Expr::Kind::EigenPair) {
        auto r = std::make_shared<Expr>(*e);
        r->args = std::move(args);
        return r;
    }
    std::string tmp = fresh_name("a", used);
    ExprPtr body = args[1];
    return let_(tmp, args[0],
                let_(e->name, eigen(var(tmp)),
                     let_(e->name2, eigenvalue_recovery(tmp, e->name), body)));
}

}  // namespace

ExprPtr desugar(const ExprPtr& e) {
    auto used = all_names(e);
    return desugar_rec(e, used);
}

namespace {

ExprPtr uniquify_rec(const ExprPtr& e, std::map<std::string, std::string>& renames,
                     std::set<std::string>& used) {
    switch (e->kind) {
        case Expr::Kind::Var: {
            auto it = renames.find(e->name);
            return it == renames.end() ? e : var(it->second);
        }
        case Expr::Kind::Let: {
            ExprPtr bound = uniquify_rec(e->args[0], renames, used);
            std::string nn = fresh_name("v", used);
            auto saved = renames;
            renames[e->name] = nn;
            ExprPtr body = uniquify_rec(e->args[1], renames, used);
            renames = saved;
            return let_(nn, bound, body);
        }
        case Expr::Kind::EigenPair: {
            ExprPtr bound = uniquify_rec(e->args[0], renames, used);
            std::string nb = fresh_name("v", used);
            std::string nd = fresh_name("v", used);
            auto saved = renames;
            renames[e->name] = nb;
            renames[e->name2] = nd;
            ExprPtr body = uniquify_rec(e->args[1], renames, used);
            renames = saved;
            return eigenpair(nb, nd, bound, body);
        }
        default: {
            auto r = std::make_shared<Expr>(*e);
            r->args.clear();
            for (auto& a : e->args) r->args.push_back(uniquify_rec(a, renames, used));
            return r;
        }
    }
}

}  // namespace

ExprPtr uniquify(const ExprPtr& e, const std::set<std::string>& reserved) {
    std::set<std::string> used = all_names(e);
    used.insert(reserved.begin(), reserved.end());
    std::map<std::string, std::string> renames;
    return uniquify_rec(e, renames, used);
}

ExprPtr substitute(const ExprPtr& e, const std::string& name, const ExprPtr& value) {
    switch (e->kind) {
        case Expr::Kind::Var:
            return e->name == name ? value : e;
        case Expr::Kind::Let: {
            ExprPtr bound = substitute(e->args[0], name, value);
            ExprPtr body = e->name == name ? e->args[1] : substitute(e->args[1], name, value);
            return let_(e->name, bound, body);
        }
        case Expr::Kind::EigenPair: {
            ExprPtr bound = substitute(e->args[0], name, value);
            bool shadowed = e->name == name || e->name2 == name;
            ExprPtr body = shadowed ? e->args[1] : substitute(e->args[1], name, value);
            return eigenpair(e->name, e->name2, bound, body);
        }
        default: {
            auto r = std::make_shared<Expr>(*e);
            r->args.clear();
            for (auto& a : e->args) r->args.push_back(substitute(a, name, value));
            return r;
        }
    }
}

ExprPtr inline_lets(const ExprPtr& e) {
    if (e->kind == Expr::Kind::Let) {
        ExprPtr bound = inline_lets(e->args[0]);
        return inline_lets(substitute(e->args[1], e->name, bound));
    }
    auto r = std::make_shared<Expr>(*e);
    r->args.clear();
    for (auto& a : e->args) r->args.push_back(inline_lets(a));
    return r;
}

}  // namespace matlang
