#pragma once

// Verified constructions of pairwise-disjoint subsurface copies. A witness is
// a list of base curve blocks (whose ribbon neighborhoods give the copies)
// plus band moves that split boundary circles; replaying the moves against the
// exact complement data of the blocks certifies that n disjoint copies of the
// requested type, each with connected complement, embed in the surface.

#include <optional>
#include <string>
#include <vector>

#include "cat0/surfaces.hpp"

namespace cat0 {

struct StripMove {
  int copy = -1;    // copy gaining the band
  int circle = -1;  // boundary circle carrying both band feet
  bool nonseparating = false;  // arc type of the band core inside its region
  // Separating bands split the region; the piece keeping the first new circle
  // receives genus_left and left_circles.
  int genus_left = 0;
  std::vector<int> left_circles;
};

struct CopiesWitness {
  SubsurfaceType type;
  std::vector<std::vector<int>> blocks;  // base curves per copy
  std::vector<StripMove> strips;         // applied in order
};

// Abstract state of the copies and the complement regions during replay.
struct ReplayPiece {
  int genus = 0;
  std::vector<int> circles;
};

struct ReplayState {
  std::vector<ReplayPiece> copies;
  std::vector<ReplayPiece> regions;
  // circle id -> (copy index, region index)
  std::vector<std::pair<int, int>> sides;
  int next_circle = 0;
};

// Rebuilds the initial state from the blocks alone: validates that the blocks
// are connected, pairwise disjoint and non-crossing, and reads the copy types,
// regions and boundary circles from the cut complex of their union.
bool replay_init(const LickorishSystem& sys, const std::vector<std::vector<int>>& blocks,
                 ReplayState& state, std::string* error);

bool replay_strip(ReplayState& state, const StripMove& mv, std::string* error);

// Final conditions: every copy has the requested type and the complement of
// each copy (all other copies plus all regions) is connected.
bool replay_final(const ReplayState& state, SubsurfaceType type, int n, std::string* error);

// Full independent check of a claimed witness.
bool replay_copies_witness(const LickorishSystem& sys, SubsurfaceType type, int n,
                           const CopiesWitness& w, std::string* error);

// Search over block layouts and strip moves. Every returned witness has been
// validated by the replay above.
std::optional<CopiesWitness> find_disjoint_copies(const LickorishSystem& sys,
                                                  SubsurfaceType type, int n);

}  // namespace cat0
