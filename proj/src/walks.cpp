#include "walkprove/walks.hpp"

#include <algorithm>
#include <map>

#include "walkprove/fp.hpp"
#include "walkprove/util.hpp"

namespace walkprove {

namespace {

const std::map<std::string, std::pair<int, int>>& step_names() {
    static const std::map<std::string, std::pair<int, int>> m = {
        {"E", {1, 0}},  {"W", {-1, 0}},  {"N", {0, 1}},   {"S", {0, -1}},
        {"NE", {1, 1}}, {"NW", {-1, 1}}, {"SE", {1, -1}}, {"SW", {-1, -1}},
    };
    return m;
}

}  // namespace

StepSet StepSet::parse(const std::string& text) {
    StepSet s;
    for (const std::string& raw : split(text, ',')) {
        std::string tok = trim(raw);
        auto it = step_names().find(tok);
        if (it == step_names().end()) throw error("StepSet: unknown step '" + tok + "'");
        if (s.has(it->second.first, it->second.second))
            throw error("StepSet: duplicate step '" + tok + "'");
        s.steps.push_back(it->second);
    }
    if (s.steps.empty()) throw error("StepSet: empty step set");
    return s;
}

std::string StepSet::str() const {
    std::string out;
    for (const auto& st : steps) {
        for (const auto& [name, d] : step_names()) {
            if (d == st) {
                if (!out.empty()) out += ",";
                out += name;
                break;
            }
        }
    }
    return out;
}

bool StepSet::has(int dx, int dy) const {
    return std::find(steps.begin(), steps.end(), std::make_pair(dx, dy)) != steps.end();
}

namespace {

// One DP layer advance over the integers. Layers are (N+1)×(N+1), stride N+1.
void advance_int(const StepSet& s, const std::vector<Int>& prev, std::vector<Int>& cur, int n1,
                 int N) {
    size_t W = (size_t)N + 1;
    for (int i = 0; i <= n1; ++i)
        for (int j = 0; j <= n1; ++j) {
            Int acc;
            for (const auto& [dx, dy] : s.steps) {
                int si = i - dx, sj = j - dy;
                if (si < 0 || sj < 0 || si > n1 - 1 || sj > n1 - 1) continue;
                acc += prev[(size_t)si * W + (size_t)sj];
            }
            cur[(size_t)i * W + (size_t)j] = std::move(acc);
        }
}

void advance_mod(const StepSet& s, const std::vector<uint64_t>& prev, std::vector<uint64_t>& cur,
                 int n1, int N, uint64_t p) {
    size_t W = (size_t)N + 1;
    for (int i = 0; i <= n1; ++i)
        for (int j = 0; j <= n1; ++j) {
            uint64_t acc = 0;
            for (const auto& [dx, dy] : s.steps) {
                int si = i - dx, sj = j - dy;
                if (si < 0 || sj < 0 || si > n1 - 1 || sj > n1 - 1) continue;
                acc += prev[(size_t)si * W + (size_t)sj];
            }
            cur[(size_t)i * W + (size_t)j] = acc % p;
        }
}

}  // namespace

Int count(const StepSet& s, int n, int i, int j) {
    if (n < 0 || i < 0 || j < 0) throw error("count: indices must be non-negative");
    if (i > n || j > n) return Int(0);
    int N = n;
    size_t W = (size_t)N + 1;
    std::vector<Int> prev(W * W), cur(W * W);
    prev[0] = Int(1);
    for (int m = 1; m <= n; ++m) {
        advance_int(s, prev, cur, m, N);
        std::swap(prev, cur);
    }
    return prev[(size_t)i * W + (size_t)j];
}

namespace {

template <class T>
std::vector<T> extract_section(const std::vector<T>& layer, Section which, int n, int N) {
    size_t W = (size_t)N + 1;
    std::vector<T> row;
    switch (which) {
        case Section::X0:
            row.resize((size_t)n + 1);
            for (int i = 0; i <= n; ++i) row[(size_t)i] = layer[(size_t)i * W];
            break;
        case Section::Y0:
            row.assign(layer.begin(), layer.begin() + n + 1);
            break;
        case Section::Origin:
            row.push_back(layer[0]);
            break;
        case Section::Diagonal: {
            T acc{};
            for (int i = 0; i <= n; ++i)
                for (int j = 0; j <= n; ++j) acc += layer[(size_t)i * W + (size_t)j];
            row.push_back(std::move(acc));
            break;
        }
    }
    return row;
}

}  // namespace

std::vector<std::vector<Int>> section_series_int(const StepSet& s, Section which, int N) {
    if (N < 0) throw error("section_series: negative order");
    size_t W = (size_t)N + 1;
    std::vector<Int> prev(W * W), cur(W * W);
    prev[0] = Int(1);
    std::vector<std::vector<Int>> out;
    out.reserve((size_t)N + 1);
    out.push_back(extract_section(prev, which, 0, N));
    for (int n = 1; n <= N; ++n) {
        advance_int(s, prev, cur, n, N);
        std::swap(prev, cur);
        out.push_back(extract_section(prev, which, n, N));
    }
    return out;
}

std::vector<std::vector<uint64_t>> section_series_mod(const StepSet& s, Section which, int N,
                                                      uint64_t p) {
    if (N < 0) throw error("section_series: negative order");
    size_t W = (size_t)N + 1;
    std::vector<uint64_t> prev(W * W, 0), cur(W * W, 0);
    prev[0] = 1 % p;
    std::vector<std::vector<uint64_t>> out;
    out.reserve((size_t)N + 1);
    auto grab = [&](const std::vector<uint64_t>& layer, int n) {
        auto row = extract_section(layer, which, n, N);
        if (which == Section::Diagonal) row[0] %= p;
        return row;
    };
    out.push_back(grab(prev, 0));
    for (int n = 1; n <= N; ++n) {
        advance_mod(s, prev, cur, n, N, p);
        std::swap(prev, cur);
        out.push_back(grab(prev, n));
    }
    return out;
}

std::vector<std::vector<uint64_t>> section_at_points_mod(const StepSet& s, Section which, int N,
                                                         uint64_t p,
                                                         const std::vector<uint64_t>& points) {
    if (N < 0) throw error("section_at_points: negative order");
    if (which != Section::X0 && which != Section::Y0)
        throw error("section_at_points: only the x- and y-axis sections can be evaluated");
    size_t W = (size_t)N + 1;
    size_t K = points.size();
    std::vector<std::vector<uint64_t>> pw(K);
    for (size_t k = 0; k < K; ++k) {
        pw[k].resize(W);
        pw[k][0] = 1 % p;
        for (size_t i = 1; i < W; ++i) pw[k][i] = mulmod(pw[k][i - 1], points[k] % p, p);
    }
    std::vector<std::vector<uint64_t>> out(K, std::vector<uint64_t>(W, 0));
    std::vector<uint64_t> prev(W * W, 0), cur(W * W, 0);
    prev[0] = 1 % p;
    auto accumulate = [&](const std::vector<uint64_t>& layer, int n) {
        for (size_t k = 0; k < K; ++k) {
            uint64_t acc = 0;
            for (int i = 0; i <= n; ++i) {
                uint64_t f = which == Section::X0 ? layer[(size_t)i * W] : layer[(size_t)i];
                if (f) acc = addmod(acc, mulmod(f, pw[k][(size_t)i], p), p);
            }
            out[k][(size_t)n] = acc;
        }
    };
    accumulate(prev, 0);
    for (int n = 1; n <= N; ++n) {
        advance_mod(s, prev, cur, n, N, p);
        std::swap(prev, cur);
        accumulate(prev, n);
    }
    return out;
}

std::vector<std::vector<Int>> full_table_int(const StepSet& s, int N) {
    if (N < 0) throw error("full_table: negative order");
    size_t W = (size_t)N + 1;
    std::vector<Int> prev(W * W), cur(W * W);
    prev[0] = Int(1);
    std::vector<std::vector<Int>> out;
    auto snapshot = [&](const std::vector<Int>& layer, int n) {
        std::vector<Int> lay((size_t)(n + 1) * (size_t)(n + 1));
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j)
                lay[(size_t)i * (size_t)(n + 1) + (size_t)j] = layer[(size_t)i * W + (size_t)j];
        out.push_back(std::move(lay));
    };
    snapshot(prev, 0);
    for (int n = 1; n <= N; ++n) {
        advance_int(s, prev, cur, n, N);
        std::swap(prev, cur);
        snapshot(prev, n);
    }
    return out;
}

std::vector<std::vector<uint64_t>> full_table_mod(const StepSet& s, int N, uint64_t p) {
    if (N < 0) throw error("full_table: negative order");
    size_t W = (size_t)N + 1;
    std::vector<uint64_t> prev(W * W, 0), cur(W * W, 0);
    prev[0] = 1 % p;
    std::vector<std::vector<uint64_t>> out;
    auto snapshot = [&](const std::vector<uint64_t>& layer, int n) {
        std::vector<uint64_t> lay((size_t)(n + 1) * (size_t)(n + 1), 0);
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j)
                lay[(size_t)i * (size_t)(n + 1) + (size_t)j] = layer[(size_t)i * W + (size_t)j];
        out.push_back(std::move(lay));
    };
    snapshot(prev, 0);
    for (int n = 1; n <= N; ++n) {
        advance_mod(s, prev, cur, n, N, p);
        std::swap(prev, cur);
        snapshot(prev, n);
    }
    return out;
}

}  // namespace walkprove
