#pragma once

#include <string>

#include "tensorcomm/tensor.hpp"

namespace tensorcomm {

/// Coefficient field for flattening ranks: the rationals or F_p.
struct Field {
    bool rational = true;
    int p = 2;

    static Field parse(const std::string& spec); // "q" | "fp:<prime>"
};

enum class MeasureName { flattening1, flattening2, flattening3, flattening_min, qzo };

/// A computable sub-additive measure, monotone under zeroing outs.
struct Measure {
    MeasureName name = MeasureName::flattening1;
    Field field;

    int operator()(const Tensor3& t) const;
    static Measure parse(const std::string& name, const Field& field = {});
    std::string to_string() const;
};

inline constexpr int kFlatteningAxisLimit = 4096;

/// Exact matrix rank of the axis-a flattening (rows = axis a, columns = the
/// other two axes combined).
int flattening_rank(const Tensor3& t, int axis, const Field& field = {});

/// Zeroing-out subrank: the largest diagonal reachable by axis restrictions;
/// computed as alpha of the all-green tensor.
int qzo_measure(const Tensor3& t);

/// log2(r(i)/r(p)) floored at 0; i is measured standalone. Requires
/// supp(i) within supp(p) and r(p) > 0.
double lower_bound(const Tensor3& i, const Tensor3& p, const Measure& m);

} // namespace tensorcomm
