#include "whl/lab/opnorm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "whl/lab/parallel.hpp"
#include "whl/martingale.hpp"
#include "whl/maximal.hpp"
#include "whl/vspaces.hpp"
#include "whl/walsh.hpp"

namespace whl::lab {

namespace {

constexpr struct {
    Operator op;
    std::string_view name;
} kOperators[] = {
    {Operator::Identity, "identity"},     {Operator::Doob, "M"},
    {Operator::Square, "S"},              {Operator::CondSquare, "s"},
    {Operator::FejerMax, "sigma*"},       {Operator::FejerDyadicMax, "sigma2n-max"},
    {Operator::U, "U"},                   {Operator::V, "V"},
    {Operator::Transform, "T_b"},         {Operator::PartialSumSup, "sn-sup"},
};

constexpr struct {
    NormSpec::Denominator d;
    std::string_view name;
} kDenominators[] = {
    {NormSpec::Denominator::Function, "function"},
    {NormSpec::Denominator::HardyM, "H-M"},
    {NormSpec::Denominator::HardyS, "H-S"},
    {NormSpec::Denominator::HardyCond, "H-s"},
};

}  // namespace

std::string_view to_string(Operator op)
{
    for (const auto& e : kOperators) {
        if (e.op == op) return e.name;
    }
    return "?";
}

Operator parse_operator(std::string_view name)
{
    for (const auto& e : kOperators) {
        if (e.name == name) return e.op;
    }
    throw std::invalid_argument("unknown operator '" + std::string(name) + "'");
}

std::string_view to_string(NormSpec::Denominator d)
{
    for (const auto& e : kDenominators) {
        if (e.d == d) return e.name;
    }
    return "?";
}

NormSpec::Denominator parse_denominator(std::string_view name)
{
    for (const auto& e : kDenominators) {
        if (e.name == name) return e.d;
    }
    throw std::invalid_argument("unknown denominator '" + std::string(name) + "'");
}

GridFunction apply_operator(const OperatorSpec& spec, const GridFunction& f)
{
    switch (spec.op) {
    case Operator::Identity:
        return f;
    case Operator::Doob:
        return doob_maximal(Martingale(make_dyadic(f.resolution()), f));
    case Operator::Square:
        return square_function(Martingale(make_dyadic(f.resolution()), f));
    case Operator::CondSquare:
        return cond_square_function(Martingale(make_dyadic(f.resolution()), f));
    case Operator::FejerMax:
        return fejer_maximal(f);
    case Operator::FejerDyadicMax:
        return fejer_dyadic_maximal(f);
    case Operator::U:
        return u_op(f, spec.s);
    case Operator::V:
        return v_op(f, spec.alpha, spec.s);
    case Operator::Transform: {
        std::vector<GridFunction> b;
        for (unsigned k = 0; k < f.resolution(); ++k) b.push_back(GridFunction::constant(f.resolution(), k % 2 ? -1.0 : 1.0));
        return martingale_transform(Martingale(make_dyadic(f.resolution()), f), b).terminal();
    }
    case Operator::PartialSumSup:
        break;
    }
    throw std::invalid_argument("apply_operator: sn-sup is not a pointwise operator");
}

double numerator_norm(const GridFunction& g, const VariableExponent& exp, const NormSpec& norm)
{
    return norm.lorentz ? lorentz_norm(g, exp, norm.q) : lp_norm(g, exp);
}

double denominator_norm(const GridFunction& f, const VariableExponent& exp, const NormSpec& norm)
{
    switch (norm.denominator) {
    case NormSpec::Denominator::Function:
        return lp_norm(f, exp);
    case NormSpec::Denominator::HardyM:
        return lp_norm(apply_operator({Operator::Doob}, f), exp);
    case NormSpec::Denominator::HardyS:
        return lp_norm(apply_operator({Operator::Square}, f), exp);
    case NormSpec::Denominator::HardyCond:
        return lp_norm(apply_operator({Operator::CondSquare}, f), exp);
    }
    return 0.0;
}

double partial_sum_sup_norm(const GridFunction& f, const VariableExponent& exp)
{
    require_same_resolution(f.resolution(), exp.resolution(), "partial_sum_sup_norm");
    const unsigned res = f.resolution();
    const WalshSpectrum spec = fwht(f);
    std::vector<double> partial(f.size(), 0.0);
    double best = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) {
        const double c = spec.coefficients[k];
        if (c == 0.0) continue;
        const GridFunction w = walsh_function(k, res);
        for (std::size_t i = 0; i < partial.size(); ++i) partial[i] += c * w[i];
        const GridFunction sn(res, partial);
        if (best == 0.0 || modular(sn, exp, best) > 1.0) best = std::max(best, lp_norm(sn, exp));
    }
    return best;
}

Report empirical_opnorm(const OperatorSpec& spec, const VariableExponent& exp, const std::vector<GridFunction>& family,
                        const NormSpec& norm)
{
    if (spec.op == Operator::PartialSumSup && norm.denominator != NormSpec::Denominator::Function) {
        throw std::invalid_argument("empirical_opnorm: sn-sup pairs only with the function-norm denominator");
    }
    if (spec.op == Operator::PartialSumSup && norm.lorentz) {
        throw std::invalid_argument("empirical_opnorm: sn-sup is measured in L_p(.) only");
    }
    if (norm.lorentz && !(norm.q > 0.0)) throw std::invalid_argument("empirical_opnorm: Lorentz q must be positive");

    struct Case {
        double numerator = 0.0;
        double denominator = 0.0;
    };
    std::vector<Case> cases(family.size());
    parallel_for(family.size(), [&](std::size_t i) {
        const GridFunction& f = family[i];
        require_same_resolution(f.resolution(), exp.resolution(), "empirical_opnorm");
        Case c;
        c.denominator = denominator_norm(f, exp, norm);
        if (spec.op == Operator::PartialSumSup) {
            c.numerator = partial_sum_sup_norm(f, exp);
        } else {
            c.numerator = numerator_norm(apply_operator(spec, f), exp, norm);
        }
        cases[i] = c;
    });

    Report report;
    report.title = "opnorm";
    report.columns = {"case", "numerator", "denominator", "ratio"};
    double max_ratio = 0.0;
    double min_ratio = kInfinity;
    double sum = 0.0;
    std::size_t evaluated = 0;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const auto& c = cases[i];
        if (c.denominator == 0.0) {
            report.add_row({i, c.numerator, c.denominator, nullptr});
            continue;
        }
        const double ratio = c.numerator / c.denominator;
        report.add_row({i, c.numerator, c.denominator, ratio});
        max_ratio = std::max(max_ratio, ratio);
        min_ratio = std::min(min_ratio, ratio);
        sum += ratio;
        ++evaluated;
    }
    report.summary["cases"] = evaluated;
    report.summary["max_ratio"] = max_ratio;
    report.summary["min_ratio"] = evaluated ? min_ratio : 0.0;
    report.summary["mean_ratio"] = evaluated ? sum / static_cast<double>(evaluated) : 0.0;
    report.metadata["operator"] = std::string(to_string(spec.op));
    report.metadata["s"] = spec.s;
    report.metadata["alpha"] = spec.alpha;
    report.metadata["numerator"] = norm.lorentz ? "lorentz" : "lebesgue";
    if (norm.lorentz) report.metadata["q"] = std::isinf(norm.q) ? nlohmann::json("inf") : nlohmann::json(norm.q);
    report.metadata["denominator"] = std::string(to_string(norm.denominator));
    if (spec.op == Operator::V) report.metadata["v_levels"] = "truncated at n <= N";
    return report;
}

double dual_doob_constant(const std::vector<std::vector<GridFunction>>& sequences, const VariableExponent& exp, double r)
{
    std::vector<double> ratios(sequences.size(), 0.0);
    const auto filt = make_dyadic(exp.resolution());
    parallel_for(sequences.size(), [&](std::size_t i) {
        const double den = lp_norm(power_sum(sequences[i], r), exp);
        if (den > 0.0) ratios[i] = lp_norm(conditional_sum(sequences[i], *filt, r), exp) / den;
    });
    return ratios.empty() ? 0.0 : *std::max_element(ratios.begin(), ratios.end());
}

}  // namespace whl::lab
