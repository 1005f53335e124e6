#include "dgln/poisson.hpp"

namespace dgln {

PairList all_pairs(std::size_t m) {
    PairList ps;
    ps.reserve(m * (m - 1) / 2);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) ps.emplace_back(i, j);
    return ps;
}

namespace {

// Shared pair-constancy scan over cached bracket data.
template <class Data, class BracketFn, class ValueFn>
LcResult lc_scan(const std::vector<EvalPtr>& fns, std::size_t npoints, const PairList& pairs,
                 BracketFn&& bracket, ValueFn&& value) {
    const std::size_t m = fns.size();
    LcResult res;
    res.omega.assign(m, std::vector<Rat>(m, Rat(0)));
    for (const auto& [i, j] : pairs) {
        Rat ratio;
        bool first = true;
        for (std::size_t p = 0; p < npoints; ++p) {
            Rat vi = value(i, p), vj = value(j, p);
            Rat r = bracket(i, j, p) / (vi * vj);
            if (first) {
                ratio = r;
                first = false;
            } else if (r != ratio) {
                res.ok = false;
                res.violation = LcViolation{i, j, 0, p, ratio, r, fns[i]->name(), fns[j]->name()};
                res.omega.clear();
                return res;
            }
        }
        res.omega[i][j] = ratio;
        res.omega[j][i] = -ratio;
    }
    return res;
}

}  // namespace

LcResult log_canonical_check(const std::vector<EvalPtr>& fns, const std::vector<DoublePoint>& points,
                             const PairList& pairs_in) {
    if (points.size() < 2 && fns.size() > 1)
        throw std::invalid_argument("log_canonical_check: need at least 2 points");
    PairList pairs = pairs_in.empty() ? all_pairs(fns.size()) : pairs_in;

    // Only functions that occur in some pair need gradients.
    std::vector<char> used(fns.size(), 0);
    for (auto& [i, j] : pairs) used[i] = used[j] = 1;

    std::vector<std::vector<Rat>> values(fns.size(), std::vector<Rat>(points.size()));
    std::vector<std::vector<BracketData>> data(fns.size());
    for (std::size_t i = 0; i < fns.size(); ++i) {
        if (!used[i]) continue;
        data[i].resize(points.size());
        auto fe = [&fn = *fns[i]](const auto& q) { return fn.eval(q); };
        for (std::size_t p = 0; p < points.size(); ++p) {
            values[i][p] = fns[i]->eval(points[p]);
            if (values[i][p] == 0)
                throw ResampleError("function " + fns[i]->name() + " vanishes at sample point " +
                                    std::to_string(p));
            data[i][p] = prepare_bracket(fe, points[p]);
        }
    }
    return lc_scan<BracketData>(
        fns, points.size(), pairs,
        [&](std::size_t i, std::size_t j, std::size_t p) { return bracket_from_data(data[i][p], data[j][p]); },
        [&](std::size_t i, std::size_t p) { return values[i][p]; });
}

LcResult log_canonical_check_std(const std::vector<EvalPtr>& fns, const std::vector<Mat>& xs,
                                 const PairList& pairs_in) {
    if (xs.size() < 2 && fns.size() > 1)
        throw std::invalid_argument("log_canonical_check_std: need at least 2 points");
    PairList pairs = pairs_in.empty() ? all_pairs(fns.size()) : pairs_in;
    std::vector<char> used(fns.size(), 0);
    for (auto& [i, j] : pairs) used[i] = used[j] = 1;

    std::vector<std::vector<Rat>> values(fns.size(), std::vector<Rat>(xs.size()));
    std::vector<std::vector<StdBracketData>> data(fns.size());
    for (std::size_t i = 0; i < fns.size(); ++i) {
        if (!used[i]) continue;
        data[i].resize(xs.size());
        // Restriction to one matrix: both arguments read the same point.
        auto fe = [&fn = *fns[i]](const auto& m) {
            using S = std::decay_t<decltype(m(0, 0))>;
            return fn.eval(DoublePointT<S>{m, m});
        };
        for (std::size_t p = 0; p < xs.size(); ++p) {
            values[i][p] = fns[i]->eval(DoublePoint{xs[p], xs[p]});
            if (values[i][p] == 0)
                throw ResampleError("function " + fns[i]->name() + " vanishes at sample point " +
                                    std::to_string(p));
            data[i][p] = prepare_bracket_std(fe, xs[p]);
        }
    }
    return lc_scan<StdBracketData>(
        fns, xs.size(), pairs,
        [&](std::size_t i, std::size_t j, std::size_t p) {
            return bracket_std_from_data(data[i][p], data[j][p]);
        },
        [&](std::size_t i, std::size_t p) { return values[i][p]; });
}

}  // namespace dgln
