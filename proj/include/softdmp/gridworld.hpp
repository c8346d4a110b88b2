#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "softdmp/mdp.hpp"

namespace softdmp {

/// Grid actions, in table order.
enum GridAction : int { kUp = 0, kDown = 1, kLeft = 2, kRight = 3, kStop = 4 };
inline constexpr int kGridActionCount = 5;
extern const std::vector<std::string> kGridActionNames;

/// Rectangular grid with blocked cells. Cell ids are row * width + col,
/// row 0 at the top.
struct GridSpec {
    int width = 0;
    int height = 0;
    std::set<int> wall_cells;
    std::optional<int> goal_cell;
    int start_cell = 0;
    double collision_reward = 0.0;
    double goal_reward = 0.0;

    int cell(int row, int col) const { return row * width + col; }
    bool is_wall(int c) const { return wall_cells.count(c) > 0; }

    /// Throws std::invalid_argument when start/goal sit on a wall or any
    /// referenced cell is out of range.
    void validate() const;
};

/// Parses an ASCII map ('#' wall, '.' free, 'S' start, 'G' goal). All rows
/// must have equal width; exactly one 'S' is required, 'G' is optional.
/// Reward fields are left at their defaults.
GridSpec parse_grid_map(const std::vector<std::string>& rows);

/// Renders the wall/start/goal layout back to ASCII rows.
std::vector<std::string> render_grid_map(const GridSpec& spec);

/// Builds the deterministic grid MDP. A move into a wall or off the edge
/// keeps the agent in place and yields collision_reward; "stop" stays with
/// reward 0; entering the goal yields goal_reward and the goal is absorbing.
/// The initial distribution is a point mass at the start cell.
Mdp build_gridworld(const GridSpec& spec, double discount);

/// bump[s][a]: the grid move from cell s under action a collides with a
/// wall or the boundary. Derived from the layout alone; the absorbing goal
/// overrides these transitions in the MDP, so the goal row reads false.
std::vector<std::vector<bool>> bump_table(const GridSpec& spec);

}  // namespace softdmp
