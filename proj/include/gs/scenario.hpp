#pragma once

#include <map>
#include <string>
#include <vector>

#include "gs/names.hpp"

namespace gs {

struct RoomDjConfig {
    uint64_t seed = 1;
    size_t peers = 8;
    uint64_t tfresh_us = 30'000'000;  // freshness window for "playing now"
    uint64_t period_us = 1'000'000;
    bool empty_room = false;  // nobody ever enters
};

/// Deterministic record of one scenario run. Everything here is a pure
/// function of RoomDjConfig.
struct RoomDjReport {
    struct PlaylistChange {
        uint64_t t;
        std::vector<std::string> songs;  // sorted UUID strings
    };
    struct PlaybackChange {
        uint64_t t;
        std::string song;
    };
    struct FrameChange {
        uint64_t t;
        std::string artwork;  // empty string = blank screen
    };

    std::map<std::string, std::string> names;  // scenario vocabulary -> UUID
    std::vector<PlaylistChange> playlist_timeline;
    std::vector<PlaybackChange> playback_timeline;
    std::vector<FrameChange> frame_timeline;
    std::vector<std::string> final_playlist;
    std::string final_frame;
    size_t dj_bindings = 0;      // query-session deliveries seen by the DJ
    size_t player_deliveries = 0;
    size_t frame_deliveries = 0;

    std::string to_json() const;
};

/// Runs the scripted four-agent room: a monitor turning MAC sightings into
/// presence facts, a DJ holding the standing liked-songs query, a player
/// publishing what it plays, and a picture frame showing the artwork of
/// whatever is fresh. Agents touch nothing but the publish/subscribe
/// surface; coordination happens entirely through the shared graph.
RoomDjReport run_room_dj(const RoomDjConfig& cfg);

}  // namespace gs
