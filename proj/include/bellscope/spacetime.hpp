#pragma once

#include <cmath>
#include <string>

namespace bellscope {

enum class EventKind { free_choice, outcome, latent, preparation };

inline const char* kind_name(EventKind k) {
    switch (k) {
        case EventKind::free_choice: return "free_choice";
        case EventKind::outcome: return "outcome";
        case EventKind::latent: return "latent";
        case EventKind::preparation: return "preparation";
    }
    return "?";
}

// Labeled event at 1+1 Minkowski coordinates, units with c = 1.
struct SpacetimeEvent {
    std::string label;
    double t = 0;
    double x = 0;
    EventKind kind = EventKind::latent;
};

// Strictly earlier and inside the cone; the lightlike boundary counts as
// inside (<=, not <).
inline bool in_past_lightcone(const SpacetimeEvent& e1, const SpacetimeEvent& e2) {
    return e1.t < e2.t && std::fabs(e2.x - e1.x) <= e2.t - e1.t;
}

inline bool spacelike_separated(const SpacetimeEvent& e1, const SpacetimeEvent& e2) {
    return !in_past_lightcone(e1, e2) && !in_past_lightcone(e2, e1);
}

// How far outside the past cone e1 sits relative to e2: positive when the
// cone condition fails. Used as the re-checkable gap in embedding witnesses.
inline double lightcone_violation(const SpacetimeEvent& e1, const SpacetimeEvent& e2) {
    if (e1.t >= e2.t) return std::fabs(e2.x - e1.x) + (e1.t - e2.t);
    return std::fabs(e2.x - e1.x) - (e2.t - e1.t);
}

} // namespace bellscope
