#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ffr/band.hpp"
#include "ffr/geometry.hpp"
#include "ffr/spectrum.hpp"

namespace ffr {

enum class TrafficClass { RT, NRT };
enum class Scheme { ProposedClassified, ProposedUnclassified, Conventional };

const char* to_string(TrafficClass c);
const char* to_string(Scheme s);
Scheme scheme_from_string(const std::string& s);

using CallId = std::int64_t;

struct CallRecord {
  CallId id = 0;
  TrafficClass traffic_class = TrafficClass::RT;
  CellIndex host_cell = kReferenceCell;
  Zone zone = Zone::Edge;
  BandSet slice;
  int channels = 1;
  double arrival_time = 0.0;
  double dwell = 0.0;
};

/// Active calls of one cell, ordered by id.
struct CellState {
  std::map<CallId, CallRecord> active;

  /// Channels requested by active calls matching the filters.
  int demand(const Zone* zone = nullptr, const TrafficClass* cls = nullptr) const;
  BandSet in_use() const;
};

struct CallRequest {
  TrafficClass traffic_class = TrafficClass::RT;
  CellIndex cell = kReferenceCell;
  Zone zone = Zone::Edge;
  int channels = 1;
  double time = 0.0;
  double dwell = 0.0;
};

struct Reshuffle {
  CallId id = 0;
  BandSet from;
  BandSet to;
};

struct AdmissionDecision {
  bool accepted = false;
  std::string reason;  // empty when accepted
  CallId id = -1;
  BandSet slice;
  /// Pool the first channel of the slice came from: C, X-XI, Z, XI, or the
  /// cell's own label.
  std::string pool;
  bool reassignment_triggered = false;
  std::vector<Reshuffle> reshuffled;
};

/// Named pools a cell assigns from, in the order they are tried.
struct BandGroup {
  std::string name;
  BandSet band;
};

/// Ordered candidate pools for the reference cell. "C" and "X-XI" in a center
/// list mean whatever edge calls leave over.
std::vector<BandGroup> band_preference_groups(const FrequencyPlan& plan, const Reassignment& r,
                                              Zone zone, TrafficClass cls, Scheme scheme);

/// Admission control for the seven cluster cells. Every event rebuilds the
/// affected cell's channel assignment from scratch in priority order (edge
/// calls, then center RT, then center nRT), so occupancy always stays packed
/// from the bottom of each band.
class AdmissionControl {
 public:
  AdmissionControl(FrequencyPlan plan, Scheme scheme);

  AdmissionDecision admit(const CallRequest& request);
  /// Frees the call's channels and hands back borrowed spectrum nobody uses.
  /// Throws UnknownCall.
  std::vector<Reshuffle> release(CallId id);

  const FrequencyPlan& plan() const { return plan_; }
  Scheme scheme() const { return scheme_; }
  const CellState& state(CellIndex cell) const;
  const CallRecord* find(CallId id) const;
  Reassignment reassignment() const { return current_reassignment(plan_); }
  /// Number of accepted requests that needed new borrowed spectrum.
  std::int64_t reassignments() const { return reassignments_; }

  /// Throws InternalInconsistency when bookkeeping, disjointness or RT
  /// priority is violated.
  void check_invariants() const;

 private:
  struct Placement {
    std::map<CallId, BandSet> slices;
    std::map<CallId, std::string> pools;
  };

  bool rebuild(CellIndex cell, const CellState& calls, Placement& out) const;
  void commit(CellIndex cell, CellState& calls, const Placement& placement,
              std::vector<Reshuffle>* moved);
  int good_target(const CellState& calls) const;
  void borrow_for(const CellState& calls, bool& borrowed);
  void return_unused();
  /// Repacks the reference cell when another cell's event changed X_I.
  void refresh_reference(const BandSet& x_i_before, std::vector<Reshuffle>* moved);

  FrequencyPlan plan_;
  Scheme scheme_;
  std::array<CellState, kClusterCells> cells_;
  CallId next_id_ = 0;
  std::int64_t reassignments_ = 0;
};

/// time,cell,class,zone,outcome,band,reassignment
std::string decision_log_header();
std::string decision_log_line(const CallRequest& request, const AdmissionDecision& decision);

}  // namespace ffr
