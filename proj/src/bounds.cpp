#include "tensorcomm/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tensorcomm/solvers.hpp"

namespace tensorcomm {

Field Field::parse(const std::string& spec) {
    if (spec == "q") return {true, 0};
    if (spec.rfind("fp:", 0) == 0) {
        int p = std::stoi(spec.substr(3));
        if (p < 2) throw ParseError("field characteristic must be >= 2");
        for (int d = 2; d * d <= p; ++d)
            if (p % d == 0) throw ParseError("field characteristic must be prime");
        return {false, p};
    }
    throw ParseError("field spec must be 'q' or 'fp:<prime>'");
}

Measure Measure::parse(const std::string& name, const Field& field) {
    Measure m;
    m.field = field;
    if (name == "flattening-1") m.name = MeasureName::flattening1;
    else if (name == "flattening-2") m.name = MeasureName::flattening2;
    else if (name == "flattening-3") m.name = MeasureName::flattening3;
    else if (name == "flattening-min") m.name = MeasureName::flattening_min;
    else if (name == "qzo") m.name = MeasureName::qzo;
    else throw ParseError("unknown measure: " + name);
    return m;
}

std::string Measure::to_string() const {
    switch (name) {
    case MeasureName::flattening1: return "flattening-1";
    case MeasureName::flattening2: return "flattening-2";
    case MeasureName::flattening3: return "flattening-3";
    case MeasureName::flattening_min: return "flattening-min";
    default: return "qzo";
    }
}

int Measure::operator()(const Tensor3& t) const {
    switch (name) {
    case MeasureName::flattening1: return flattening_rank(t, 1, field);
    case MeasureName::flattening2: return flattening_rank(t, 2, field);
    case MeasureName::flattening3: return flattening_rank(t, 3, field);
    case MeasureName::flattening_min:
        return std::min({flattening_rank(t, 1, field), flattening_rank(t, 2, field),
                         flattening_rank(t, 3, field)});
    default: return qzo_measure(t);
    }
}

namespace {

using BigInt = boost::multiprecision::cpp_int;

// Bareiss fraction-free elimination; exact rank over the rationals.
int rank_rational(std::vector<std::vector<BigInt>>& m) {
    const std::size_t rows = m.size();
    if (rows == 0) return 0;
    const std::size_t cols = m[0].size();
    BigInt prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pivot = r;
        while (pivot < rows && m[pivot][c] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[r], m[pivot]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j)
                m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) / prev;
            m[i][c] = 0;
        }
        prev = m[r][c];
        ++r;
    }
    return static_cast<int>(r);
}

int rank_mod_p(std::vector<std::vector<std::int64_t>>& m, std::int64_t p) {
    const std::size_t rows = m.size();
    if (rows == 0) return 0;
    const std::size_t cols = m[0].size();
    auto inv = [p](std::int64_t a) {
        std::int64_t result = 1, base = a % p, e = p - 2;
        while (e > 0) {
            if (e & 1) result = result * base % p;
            base = base * base % p;
            e >>= 1;
        }
        return result;
    };
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pivot = r;
        while (pivot < rows && m[pivot][c] % p == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[r], m[pivot]);
        std::int64_t scale = inv((m[r][c] % p + p) % p);
        for (std::size_t j = c; j < cols; ++j) m[r][j] = (m[r][j] % p + p) % p * scale % p;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r) continue;
            std::int64_t f = (m[i][c] % p + p) % p;
            if (f == 0) continue;
            for (std::size_t j = c; j < cols; ++j)
                m[i][j] = ((m[i][j] - f * m[r][j]) % p + p) % p;
        }
        ++r;
    }
    return static_cast<int>(r);
}

} // namespace

int flattening_rank(const Tensor3& t, int axis, const Field& field) {
    if (axis < 1 || axis > 3) throw OutOfBounds("axis must be 1, 2 or 3");
    for (int i = 0; i < 3; ++i)
        if (t.axis_size(i) > kFlatteningAxisLimit) throw TooLarge("axis too large for flattening");
    const int a = axis - 1, b = (a + 1) % 3, c = (a + 2) % 3;
    // only rows/columns touched by the support matter for the rank
    std::map<int, std::size_t> row_of;
    std::map<std::pair<int, int>, std::size_t> col_of;
    for (const Triple& x : t.support) {
        row_of.emplace(x[a], row_of.size());
        col_of.emplace(std::make_pair(x[b], x[c]), col_of.size());
    }
    if (field.rational) {
        std::vector<std::vector<BigInt>> m(row_of.size(), std::vector<BigInt>(col_of.size(), 0));
        for (const Triple& x : t.support) m[row_of.at(x[a])][col_of.at({x[b], x[c]})] = 1;
        return rank_rational(m);
    }
    std::vector<std::vector<std::int64_t>> m(row_of.size(),
                                             std::vector<std::int64_t>(col_of.size(), 0));
    for (const Triple& x : t.support) m[row_of.at(x[a])][col_of.at({x[b], x[c]})] = 1;
    return rank_mod_p(m, field.p);
}

int qzo_measure(const Tensor3& t) {
    return alpha_exact(all_green(t)).first;
}

double lower_bound(const Tensor3& i, const Tensor3& p, const Measure& m) {
    if (!is_subset(i.support, p.support)) throw NotContained("problem support exceeds the promise");
    int ri = m(i);
    int rp = m(p);
    if (rp <= 0) throw OutOfBounds("promise measure must be positive");
    return std::max(0.0, std::log2(static_cast<double>(ri) / static_cast<double>(rp)));
}

} // namespace tensorcomm
