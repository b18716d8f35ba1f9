// Worked hands and knowledge bases shared by the unit and acceptance tests.
#pragma once

#include <string>

namespace fixtures {

// Complete 14-tile: (B1B2B3)(B2B3B4)(B7B7B7)(D4D5D6)(C1C1).
inline const std::string kCompleteHand = "B1B2B2B3B3B4B7B7B7C1C1D4D5D6";

// Running example: 13 concealed tiles as printed (no bamboo), deficiency 4
// under its knowledge base. The CLI and library treat it as a short hand,
// i.e. one draw is counted on top of the 14-tile deficiency.
inline const std::string kRunningHand = "C1C4C6C7C8C9D1D2D3D6D6D7D8";
inline const std::string kRunningKb = "001100121|010000030|032242321";
inline constexpr int kRunningDfncy = 4;

// Seven-bamboo / seven-dot hand whose cheapest pre-decomposition is missed by
// the four-action quadtree. The printed KB lists two B8 while the hand holds
// three, so B8 is clamped to one to keep the pair compatible.
inline const std::string kTT2Hand = "B1B5B6B8B8B8B9D1D2D4D5D5D6D7";
inline const std::string kTT2KbPrinted = "343423023|434434443|334220344";
inline const std::string kTT2Kb = "343423013|434434443|334220344";
inline constexpr int kTT2Dfncy = 3;

// Discard example. The printed hand lists 13 tiles; the 14-tile hand below
// (one more C9) reproduces the printed value vector exactly.
inline const std::string kDiscardHand = "C1C1C1C5C6C8C9C9C9D3D3D4D5D5";
inline const std::string kDiscardHandPrinted = "C1C1C1C5C6C8C9C9D3D3D4D5D5";
inline const std::string kDiscardKb = "333411123|010433411|101121422";
inline constexpr int kDiscardDfncy = 2;
inline constexpr int kDiscardBest = 19;  // for C8

}  // namespace fixtures
