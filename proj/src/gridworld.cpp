#include "softdmp/gridworld.hpp"

#include <stdexcept>

namespace softdmp {

const std::vector<std::string> kGridActionNames = {"up", "down", "left", "right", "stop"};

namespace {

constexpr int kRowDelta[] = {-1, 1, 0, 0, 0};
constexpr int kColDelta[] = {0, 0, -1, 1, 0};

// Destination cell of a move, or -1 on a collision (wall or boundary).
int move_target(const GridSpec& spec, int s, int a) {
    const int row = s / spec.width;
    const int col = s % spec.width;
    const int nr = row + kRowDelta[a];
    const int nc = col + kColDelta[a];
    if (nr < 0 || nr >= spec.height || nc < 0 || nc >= spec.width) return -1;
    const int dest = spec.cell(nr, nc);
    if (spec.is_wall(dest)) return -1;
    return dest;
}

}  // namespace

void GridSpec::validate() const {
    if (width <= 0 || height <= 0)
        throw std::invalid_argument("GridSpec: width and height must be positive");
    const int n = width * height;
    auto in_range = [n](int c) { return c >= 0 && c < n; };
    for (int c : wall_cells)
        if (!in_range(c)) throw std::invalid_argument("GridSpec: wall cell out of range");
    if (!in_range(start_cell)) throw std::invalid_argument("GridSpec: start cell out of range");
    if (is_wall(start_cell)) throw std::invalid_argument("GridSpec: start cell is a wall");
    if (goal_cell) {
        if (!in_range(*goal_cell)) throw std::invalid_argument("GridSpec: goal cell out of range");
        if (is_wall(*goal_cell)) throw std::invalid_argument("GridSpec: goal cell is a wall");
    }
}

GridSpec parse_grid_map(const std::vector<std::string>& rows) {
    if (rows.empty()) throw std::invalid_argument("grid map: no rows");
    GridSpec spec;
    spec.height = static_cast<int>(rows.size());
    spec.width = static_cast<int>(rows[0].size());
    int starts = 0;
    for (int r = 0; r < spec.height; ++r) {
        if (static_cast<int>(rows[static_cast<std::size_t>(r)].size()) != spec.width)
            throw std::invalid_argument("grid map: ragged rows");
        for (int c = 0; c < spec.width; ++c) {
            const char ch = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
            const int id = spec.cell(r, c);
            switch (ch) {
                case '#': spec.wall_cells.insert(id); break;
                case '.': break;
                case 'S':
                    spec.start_cell = id;
                    ++starts;
                    break;
                case 'G': spec.goal_cell = id; break;
                default:
                    throw std::invalid_argument(std::string("grid map: unknown character '") +
                                                ch + "'");
            }
        }
    }
    if (starts != 1) throw std::invalid_argument("grid map: exactly one 'S' required");
    spec.validate();
    return spec;
}

std::vector<std::string> render_grid_map(const GridSpec& spec) {
    std::vector<std::string> rows(static_cast<std::size_t>(spec.height),
                                  std::string(static_cast<std::size_t>(spec.width), '.'));
    for (int c : spec.wall_cells)
        rows[static_cast<std::size_t>(c / spec.width)][static_cast<std::size_t>(c % spec.width)] =
            '#';
    rows[static_cast<std::size_t>(spec.start_cell / spec.width)]
        [static_cast<std::size_t>(spec.start_cell % spec.width)] = 'S';
    if (spec.goal_cell)
        rows[static_cast<std::size_t>(*spec.goal_cell / spec.width)]
            [static_cast<std::size_t>(*spec.goal_cell % spec.width)] = 'G';
    return rows;
}

Mdp build_gridworld(const GridSpec& spec, double discount) {
    spec.validate();
    Mdp mdp;
    mdp.n_states = spec.width * spec.height;
    mdp.n_actions = kGridActionCount;
    mdp.discount = discount;
    mdp.transition.assign(static_cast<std::size_t>(mdp.n_states), {});
    mdp.initial_dist.assign(static_cast<std::size_t>(mdp.n_states), 0.0);
    mdp.absorbing.assign(static_cast<std::size_t>(mdp.n_states), false);
    mdp.initial_dist[static_cast<std::size_t>(spec.start_cell)] = 1.0;

    for (int s = 0; s < mdp.n_states; ++s) {
        auto& row = mdp.transition[static_cast<std::size_t>(s)];
        row.resize(kGridActionCount);
        if (spec.goal_cell && s == *spec.goal_cell) {
            mdp.absorbing[static_cast<std::size_t>(s)] = true;
            for (int a = 0; a < kGridActionCount; ++a)
                row[static_cast<std::size_t>(a)] = {{s, 1.0, 0.0}};
            continue;
        }
        for (int a = 0; a < kGridActionCount; ++a) {
            int dest;
            double reward;
            if (a == kStop) {
                dest = s;
                reward = 0.0;
            } else {
                const int target = move_target(spec, s, a);
                if (target < 0) {
                    dest = s;
                    reward = spec.collision_reward;
                } else {
                    dest = target;
                    reward = (spec.goal_cell && target == *spec.goal_cell) ? spec.goal_reward
                                                                           : 0.0;
                }
            }
            row[static_cast<std::size_t>(a)] = {{dest, 1.0, reward}};
        }
    }
    mdp.validate();
    return mdp;
}

std::vector<std::vector<bool>> bump_table(const GridSpec& spec) {
    spec.validate();
    const int n = spec.width * spec.height;
    std::vector<std::vector<bool>> bump(static_cast<std::size_t>(n),
                                        std::vector<bool>(kGridActionCount, false));
    for (int s = 0; s < n; ++s) {
        if (spec.goal_cell && s == *spec.goal_cell) continue;
        for (int a = 0; a < kGridActionCount; ++a) {
            if (a == kStop) continue;
            bump[static_cast<std::size_t>(s)][static_cast<std::size_t>(a)] =
                move_target(spec, s, a) < 0;
        }
    }
    return bump;
}

}  // namespace softdmp
