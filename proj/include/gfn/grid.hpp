#pragma once

#include <map>
#include <string>
#include <vector>

#include "gfn/dag.hpp"

namespace gfn {

struct GridSpec {
    int height = 32;
    int width = 32;

    int num_cells() const { return height * width; }
};

inline StateId cell_id(const GridSpec& spec, int row, int col) {
    return static_cast<StateId>(row * spec.width + col);
}
inline int cell_row(const GridSpec& spec, StateId s) { return s / spec.width; }
inline int cell_col(const GridSpec& spec, StateId s) { return s % spec.width; }

// Nonnegative reward per terminating state, scaled to [0,1].
struct RewardField {
    std::vector<double> values;  // indexed by StateId
    std::string name;
};

using RewardParams = std::map<std::string, double>;

// Cells are states in row-major order; moves are right and down; every cell
// is terminating and the start is the upper-left cell.
EnvGraph build_grid(const GridSpec& spec);

const std::vector<std::string>& reward_names();

// Raw (unnormalized) field for a named reward, evaluated on normalized cell
// coordinates. Throws UnknownReward.
std::vector<double> eval_reward_raw(const std::string& name, const GridSpec& spec,
                                    const RewardParams& params = {});

// Affine min-max rescale of a raw field to [0,1]. Throws DegenerateField when
// the field is constant.
RewardField normalize_field(const std::vector<double>& raw, const std::string& name = "");

// Named field, normalized. A constant positive raw field (possible only on a
// 1x1 grid) maps to the constant 1.0 instead of erroring.
RewardField eval_reward_field(const std::string& name, const GridSpec& spec,
                              const RewardParams& params = {});

// Applies an elementwise power; used for sharpened component targets.
RewardField pow_field(const RewardField& field, double beta);

// Concatenated one-hot row and column encodings; length height+width.
std::vector<double> khot_encode(const GridSpec& spec, StateId s);

}  // namespace gfn
