#pragma once

// Schedules of moves (the three limit families), the closed multisums they
// produce, the alpha-side sums, and the identities relating them.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "a22/bailey.hpp"
#include "a22/laurent.hpp"
#include "a22/multisum.hpp"

namespace a22 {

enum class Kind { Lim1, Lim2, Lim3 };

/// "lim1", "lim2", "lim3".
std::string_view to_string(Kind k);
/// Case-insensitive; RangeError otherwise.
Kind parse_kind(std::string_view s);

/// One row of the schedule-to-module table: level = 6k + level_offset,
/// 0 <= i <= 3k + i_max_offset, and s1 = i or s1 = 3k + s1_offset - i.
struct Table2Row {
    int pair_id;
    Kind kind;
    int level_offset;
    int i_max_offset;
    bool s1_reversed;
    int s1_offset;

    int level(int k) const { return 6 * k + level_offset; }
    int i_max(int k) const { return 3 * k + i_max_offset; }
    int s1(int k, int i) const { return s1_reversed ? 3 * k + s1_offset - i : i; }
    int module_count(int k) const { return i_max(k) + 1; }
};

const std::vector<Table2Row>& table2_rows();
/// RangeError if (pair_id, kind) is not a row.
const Table2Row& table2_row(int pair_id, Kind kind);

struct Schedule {
    Kind kind = Kind::Lim1;
    int k = 1;
    int i = 0;
    int pair_id = 1;

    friend bool operator==(const Schedule&, const Schedule&) = default;
};

std::string to_string(const Schedule& s);

/// RangeError unless the schedule is a table row with k >= 1 and i in range.
void validate(const Schedule& s);

std::vector<Move> expand_schedule(const Schedule& s);

/// The pair obtained by applying the schedule's moves to the registry pair.
BaileyPair final_pair(const Schedule& s);

/// Closed multisum for beta^final.
MultisumSpec multisum_spec(const Schedule& s);

/// (q)_inf beta^final_inf, exact to order.
LaurentSeries sum_side(const Schedule& s, Exponent order);

/// The alpha-side displays. Lim2 is split by case: I0 and I1 are the i = 0
/// and i = 1 displays, General the i > 1 display (usable at every i).
enum class AlphaDisplay { Lim1, Lim1I0, Lim2I0, Lim2I1, Lim2General, Lim3 };

/// sum over t of the display's summand built from alpha~_t of p, without
/// the 1/(a)_inf prefactor. a = q^c with c = p.base_exp().
LaurentSeries alpha_display(const BaileyPair& p, AlphaDisplay d, int k, int i, Exponent order);

/// The display a schedule is checked against.
AlphaDisplay alpha_display_for(const Schedule& s);

LaurentSeries alpha_side(const Schedule& s, Exponent order);

/// sum_side * (a)_inf == alpha_side to order.
bool verify_limit_identity(const Schedule& s, Exponent order);
/// The same check with the sum side taken from an explicit spec.
bool verify_limit_identity(const Schedule& s, const MultisumSpec& spec, Exponent order);

/// The constant rho with alpha_side = rho * Q(q^(l+3), q^(-s1-1)): 1 + q for
/// the Lim2 i = 0 display, 1 otherwise.
LaurentSeries alpha_side_factor(const Schedule& s);

/// At a = q^2: the general Lim2 display at i = 1 equals the i = 1 display,
/// and (1 + q) times it at i = 0 equals the i = 0 display. At a = q and
/// a = q^2: the Lim1 display at i = 0 equals the i = 0 display.
bool verify_remark_relations(int k, Exponent order);

/// beta^final_n from composed moves against the finite closed multisum.
bool cross_validate(const Schedule& s, int n_max, Exponent order);

// Lemmas used to collapse multisums.
bool lemma_b1bc1(int j1, int j3, Exponent order);
bool lemma_f2b1(int j1, int j3, int c, Exponent order);
/// Both sides of the finite identity behind the f2b1 lemma satisfy
/// f(N+1, t) = f(N, t+1) - q^N f(N, t), f(0, t) = 1/(-a)_t, and agree.
bool f2b1_recurrence(int big_n, int t, int c, Exponent order);

} // namespace a22
