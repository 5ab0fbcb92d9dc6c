#include "ytf/coeffset.hpp"

#include <nlohmann/json.hpp>

#include <stdexcept>

namespace ytf {

using nlohmann::json;
using nlohmann::ordered_json;

CoeffSet::CoeffSet(int n, int d) : n_(n), d_(d) {
    if (n < 3) throw std::invalid_argument("CoeffSet: n must be >= 3");
    int dmax = (n - 2) / 2;
    if (d < 2 || d > dmax)
        throw std::invalid_argument("CoeffSet: d must satisfy 2 <= d <= floor((n-2)/2)");
}

void CoeffSet::add(int i, int k, const MultiIndex& alpha, const Rational& value) {
    if (i > k) std::swap(i, k);
    if (i < 0 || k >= n_) throw std::invalid_argument("CoeffSet: index out of range");
    if (alpha.dim() != n_) throw std::invalid_argument("CoeffSet: alpha dimension mismatch");
    int deg = alpha.degree();
    if (deg < 2 || deg > d_)
        throw std::invalid_argument("CoeffSet: degree out of range for entry (" +
                                    std::to_string(i + 1) + "," + std::to_string(k + 1) + "," +
                                    alpha.to_string() + ")");
    CoeffKey key{i, k, alpha};
    auto it = entries_.find(key);
    if (it == entries_.end()) {
        if (value != 0) entries_.emplace(key, value);
    } else {
        it->second += value;
        if (it->second == 0) entries_.erase(it);
    }
}

Rational CoeffSet::get(int i, int k, const MultiIndex& alpha) const {
    if (i > k) std::swap(i, k);
    auto it = entries_.find(CoeffKey{i, k, alpha});
    return it == entries_.end() ? Rational(0) : it->second;
}

Rational CoeffSet::norm2() const {
    Rational total(0);
    for (const auto& [key, v] : entries_) {
        Rational sq = v * v;
        total += (key.i == key.k) ? sq : 2 * sq;
    }
    return total;
}

double CoeffSet::norm1_double() const {
    double total = 0;
    for (const auto& [key, v] : entries_) {
        double a = std::abs(v.get_d());
        total += (key.i == key.k) ? a : 2 * a;
    }
    return total;
}

int CoeffSet::max_active_degree() const {
    int d = 0;
    for (const auto& [key, v] : entries_) d = std::max(d, key.alpha.degree());
    return d;
}

int CoeffSet::min_active_degree() const {
    int d = 1 << 20;
    for (const auto& [key, v] : entries_) d = std::min(d, key.alpha.degree());
    return entries_.empty() ? 0 : d;
}

CoeffSet CoeffSet::scaled(const Rational& t) const {
    CoeffSet out(n_, d_);
    if (t == 0) return out;
    for (const auto& [key, v] : entries_) out.entries_.emplace(key, v * t);
    return out;
}

std::string CoeffSet::to_json() const {
    ordered_json j;
    j["n"] = n_;
    j["d"] = d_;
    j["entries"] = json::array();
    for (const auto& [key, v] : entries_) {
        ordered_json e;
        e["i"] = key.i + 1;
        e["k"] = key.k + 1;
        std::vector<int> a(n_);
        for (int t = 0; t < n_; ++t) a[t] = key.alpha[t];
        e["alpha"] = a;
        e["value"] = rat_to_string(v);
        j["entries"].push_back(e);
    }
    return j.dump(2);
}

CoeffSet CoeffSet::from_json(const std::string& text) {
    json j = json::parse(text);
    if (!j.contains("n") || !j.contains("d"))
        throw std::invalid_argument("CoeffSet JSON: missing 'n' or 'd'");
    CoeffSet c(j.at("n").get<int>(), j.at("d").get<int>());
    if (j.contains("entries")) {
        for (const auto& e : j.at("entries")) {
            auto a = e.at("alpha").get<std::vector<int>>();
            if (static_cast<int>(a.size()) != c.n())
                throw std::invalid_argument("CoeffSet JSON: alpha length != n");
            c.add(e.at("i").get<int>() - 1, e.at("k").get<int>() - 1, MultiIndex::from_vector(a),
                  rat_from_string(e.at("value").get<std::string>()));
        }
    }
    return c;
}

CoeffSet CoeffSet::standard_quadratic(int n) {
    if (n < 6) throw std::invalid_argument("standard_quadratic: needs n >= 6");
    CoeffSet c(n, (n - 2) / 2);
    auto block = [&](int a, int b, int sign) {
        c.add(a, a, MultiIndex(n).plus(b, 2), Rational(sign));
        c.add(b, b, MultiIndex(n).plus(a, 2), Rational(sign));
        c.add(a, b, MultiIndex(n).plus(a).plus(b), Rational(-sign));
    };
    block(0, 1, 1);
    block(2, 3, 1);
    block(0, 2, -1);
    block(1, 3, -1);
    return c;
}

}  // namespace ytf
