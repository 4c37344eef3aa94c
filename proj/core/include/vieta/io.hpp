#pragma once

#include <string>
#include <vector>

#include "vieta/conservation.hpp"
#include "vieta/eliminant.hpp"
#include "vieta/tracker.hpp"

namespace vieta {

// Shortest decimal that round-trips to the same double.  All artifact
// writers use this, which makes re-runs byte-identical.
std::string format_double(double v);

// Trajectory CSV.  One row per (sample, particle); near-event rows keep
// their positions but leave the eight derivative columns empty.
// Columns: t, particle_id, kind, re_x, im_x, re_y, im_y, re_vx, im_vx,
//          re_vy, im_vy, re_ax, im_ax, re_ay, im_ay, near_event
std::string trajectory_csv(const std::vector<TrajectorySample>& samples);

// Event list as a JSON array: exact interval endpoints as "p/q" strings,
// kind, real-root count changes, collision location, involved ids.
std::string events_json(const std::vector<Event>& events);

// Conservation report as a JSON array of
//   {law, expected: {exact, approx}, max_drift, max_imag, tolerance, verdict}.
std::string report_json(const std::vector<ConservationReport>& reports);

// Elimination summary: both eliminants, their leading coefficients, the
// leading-form resultant cross-check, discriminants and their common factor.
std::string eliminants_json(const Eliminants& el, const UPolyQ& disc_x,
                            const UPolyQ& disc_y, const UPolyQ& common);

// Writes content to path, creating parent directories as needed.  Throws
// std::runtime_error on I/O failure.
void write_file(const std::string& path, const std::string& content);

} // namespace vieta
