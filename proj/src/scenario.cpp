#include "gs/scenario.hpp"

#include <algorithm>
#include <json.hpp>

#include "gs/node.hpp"
#include "gs/sim.hpp"

namespace gs {

namespace {

constexpr uint64_t kSecond = 1'000'000;

/// Publishes presence facts for whoever is currently sighted. Learns the
/// MAC -> user mapping from usesMobilePhone value tuples.
class RoomMonitor {
public:
    RoomMonitor(NodeApi& api, Label uses_phone, Label is_in, Label room)
        : api_(api), is_in_(is_in), room_(room) {
        FilterTemplate f;
        f.predicate = uses_phone;
        phone_sub_ = api_.subscribe_template(f);
    }

    void tick(const std::vector<std::string>& sighted_macs) {
        for (const Delivery& d : api_.poll(phone_sub_, 64)) {
            const Tuple* t = d.tuple();
            if (!t) continue;
            const Value* v = as_value(t->object);
            if (!v || v->type != value_types::utf8_string) continue;
            mac_to_user_[v->as_string()] = t->subject;
        }
        std::vector<Tuple> out;
        for (const std::string& mac : sighted_macs) {
            auto it = mac_to_user_.find(mac);
            if (it == mac_to_user_.end()) continue;
            out.push_back(make_tuple(it->second, is_in_, room_, ctx_, api_.now()));
        }
        if (!out.empty()) api_.publish(out);
    }

private:
    NodeApi& api_;
    Label is_in_, room_;
    Label ctx_{};  // zero context: the scenario's shared default graph
    SessionId phone_sub_;
    std::map<std::string, Label> mac_to_user_;
};

/// Holds the standing "songs liked by people in the room" query and
/// republishes the accumulated playlist every tick.
class RoomDj {
public:
    RoomDj(NodeApi& api, const NameDirectory& names, Label recommends, Label room)
        : api_(api), recommends_(recommends), room_(room) {
        query_sub_ = api_.subscribe_query(
            "SUBSCRIBE ?s WHERE ?p isIn ?r. ?r name 'Lab A'. ?p likesSong ?s", names);
    }

    /// Returns true when the playlist changed during this tick.
    bool tick() {
        bool changed = false;
        for (const Delivery& d : api_.poll(query_sub_, 64)) {
            ++bindings_;
            const Binding* b = d.binding();
            if (!b) continue;
            auto it = b->find("s");
            if (it == b->end()) continue;
            if (const Label* song = std::get_if<Label>(&it->second))
                changed |= playlist_.insert(*song).second;
        }
        std::vector<Tuple> out;
        for (const Label& song : playlist_)
            out.push_back(make_tuple(room_, recommends_, song, ctx_, api_.now()));
        if (!out.empty()) api_.publish(out);
        return changed;
    }

    const std::set<Label>& playlist() const { return playlist_; }
    size_t bindings() const { return bindings_; }

private:
    NodeApi& api_;
    Label recommends_, room_;
    Label ctx_{};
    SessionId query_sub_;
    std::set<Label> playlist_;
    size_t bindings_ = 0;
};

/// Plays the lowest-labelled fresh recommendation and says so in the graph.
class MusicPlayer {
public:
    MusicPlayer(NodeApi& api, Label recommends, Label playing_in, Label room, uint64_t tfresh)
        : api_(api), playing_in_(playing_in), room_(room), tfresh_(tfresh) {
        FilterTemplate f;
        f.subject = room;
        f.predicate = recommends;
        rec_sub_ = api_.subscribe_template(f);
    }

    /// Returns the song that started playing, if playback changed.
    std::optional<Label> tick() {
        for (const Delivery& d : api_.poll(rec_sub_, 64)) {
            ++deliveries_;
            const Tuple* t = d.tuple();
            if (!t) continue;
            if (const Label* song = as_label(t->object)) {
                auto [it, fresh] = last_recommended_.emplace(*song, t->timestamp_us);
                if (!fresh) it->second = std::max(it->second, t->timestamp_us);
            }
        }
        std::optional<Label> fresh_pick;
        for (const auto& [song, ts] : last_recommended_)
            if (ts + tfresh_ > api_.now() && (!fresh_pick || song < *fresh_pick))
                fresh_pick = song;

        std::optional<Label> started;
        if (fresh_pick) {
            if (!current_ || *current_ != *fresh_pick) {
                current_ = fresh_pick;
                started = fresh_pick;
            }
            api_.publish({make_tuple(*current_, playing_in_, room_, ctx_, api_.now())});
        } else {
            current_.reset();
        }
        return started;
    }

    size_t deliveries() const { return deliveries_; }

private:
    NodeApi& api_;
    Label playing_in_, room_;
    Label ctx_{};
    uint64_t tfresh_;
    SessionId rec_sub_;
    std::map<Label, uint64_t> last_recommended_;  // song -> newest ts
    std::optional<Label> current_;
    size_t deliveries_ = 0;
};

/// Soft state on the consuming side: among playingIn facts for the room,
/// only those within the freshness window count, newest wins.
class PictureFrame {
public:
    PictureFrame(NodeApi& api, Label playing_in, Label has_artwork, Label room, uint64_t tfresh)
        : api_(api), tfresh_(tfresh) {
        FilterTemplate playing;
        playing.predicate = playing_in;
        playing.object = room;
        playing_sub_ = api_.subscribe_template(playing);
        FilterTemplate artwork;
        artwork.predicate = has_artwork;
        artwork_sub_ = api_.subscribe_template(artwork);
    }

    /// Returns the artwork now on screen ("" = blank) when it changed.
    std::optional<std::string> tick() {
        for (const Delivery& d : api_.poll(artwork_sub_, 64)) {
            ++deliveries_;
            const Tuple* t = d.tuple();
            if (!t) continue;
            if (const Value* v = as_value(t->object);
                v && v->type == value_types::utf8_string)
                artwork_of_[t->subject] = v->as_string();
        }
        for (const Delivery& d : api_.poll(playing_sub_, 64)) {
            ++deliveries_;
            const Tuple* t = d.tuple();
            if (!t) continue;
            playing_.emplace_back(t->timestamp_us, t->subject);
        }

        // newest fresh playing fact wins; none means a blank screen
        std::string next;
        uint64_t best_ts = 0;
        for (const auto& [ts, song] : playing_) {
            if (ts + tfresh_ <= api_.now()) continue;
            if (ts < best_ts) continue;
            auto it = artwork_of_.find(song);
            if (it == artwork_of_.end()) continue;
            best_ts = ts;
            next = it->second;
        }
        if (next == shown_) return std::nullopt;
        shown_ = next;
        return shown_;
    }

    const std::string& shown() const { return shown_; }
    size_t deliveries() const { return deliveries_; }

private:
    NodeApi& api_;
    uint64_t tfresh_;
    SessionId playing_sub_, artwork_sub_;
    std::map<Label, std::string> artwork_of_;
    std::vector<std::pair<uint64_t, Label>> playing_;
    std::string shown_;
    size_t deliveries_ = 0;
};

}  // namespace

RoomDjReport run_room_dj(const RoomDjConfig& cfg) {
    SimConfig sc;
    sc.seed = cfg.seed;
    sc.peers = cfg.peers;
    sc.period_us = cfg.period_us;
    Simulator sim(sc);

    LabelRng lrng(cfg.seed * 0x5851f42d4c957f2dULL + 1);
    const Label alice = lrng.next(), bob = lrng.next(), lab_a = lrng.next();
    const Label song1 = lrng.next(), song2 = lrng.next();
    const Label uses_phone = lrng.next(), is_in = lrng.next(), name = lrng.next();
    const Label likes_song = lrng.next(), recommends = lrng.next();
    const Label playing_in = lrng.next(), has_artwork = lrng.next();
    const Label ctx{};

    NameDirectory names;
    names.add("alice", alice);
    names.add("bob", bob);
    names.add("labA", lab_a);
    names.add("song1", song1);
    names.add("song2", song2);
    names.add("usesMobilePhone", uses_phone);
    names.add("isIn", is_in);
    names.add("name", name);
    names.add("likesSong", likes_song);
    names.add("recommendsSong", recommends);
    names.add("playingIn", playing_in);
    names.add("hasArtwork", has_artwork);

    const std::string art1 = "art-of-" + song1.to_string();
    const std::string art2 = "art-of-" + song2.to_string();

    // seed facts
    Node& seeder = sim.node(0);
    seeder.publish({
        make_tuple(lab_a, name, Value::from_string("Lab A"), ctx, sim.now()),
        make_tuple(alice, uses_phone, Value::from_string("mac-alice"), ctx, sim.now()),
        make_tuple(bob, uses_phone, Value::from_string("mac-bob"), ctx, sim.now()),
        make_tuple(alice, likes_song, song1, ctx, sim.now()),
        make_tuple(bob, likes_song, song2, ctx, sim.now()),
        make_tuple(song1, has_artwork, Value::from_string(art1), ctx, sim.now()),
        make_tuple(song2, has_artwork, Value::from_string(art2), ctx, sim.now()),
    });
    sim.run_until_idle();

    RoomMonitor monitor(sim.node(1 % cfg.peers), uses_phone, is_in, lab_a);
    RoomDj dj(sim.node(2 % cfg.peers), names, recommends, lab_a);
    MusicPlayer player(sim.node(3 % cfg.peers), recommends, playing_in, lab_a, cfg.tfresh_us);
    PictureFrame frame(sim.node(4 % cfg.peers), playing_in, has_artwork, lab_a, cfg.tfresh_us);

    RoomDjReport report;
    for (const auto& [n, l] : names.entries()) report.names[n] = l.to_string();
    report.names["artwork1"] = art1;
    report.names["artwork2"] = art2;

    const uint64_t t0 = sim.now();
    auto record_playlist = [&](uint64_t t) {
        RoomDjReport::PlaylistChange c;
        c.t = t;
        for (const Label& s : dj.playlist()) c.songs.push_back(s.to_string());
        std::sort(c.songs.begin(), c.songs.end());
        report.playlist_timeline.push_back(std::move(c));
    };

    // scripted sightings: alice present [10s, 70s), bob present [40s, 100s)
    auto sighted_at = [&](uint64_t sec) {
        std::vector<std::string> macs;
        if (cfg.empty_room) return macs;
        if (sec >= 10 && sec < 70) macs.push_back("mac-alice");
        if (sec >= 40 && sec < 100) macs.push_back("mac-bob");
        return macs;
    };

    for (uint64_t sec = 1; sec <= 160; ++sec) {
        sim.run_until(t0 + sec * kSecond);
        const uint64_t t = sim.now() - t0;
        if (sec % 5 == 0 && sec >= 5 && sec <= 115) monitor.tick(sighted_at(sec));
        if (sec % 10 == 0 && sec >= 10 && sec <= 115)
            if (dj.tick()) record_playlist(t);
        if (sec % 5 == 2 && sec >= 12 && sec <= 117)
            if (auto song = player.tick())
                report.playback_timeline.push_back({t, song->to_string()});
        if (sec % 5 == 3 && sec >= 13)
            if (auto art = frame.tick()) report.frame_timeline.push_back({t, *art});
    }
    sim.run_until_idle();

    for (const Label& s : dj.playlist()) report.final_playlist.push_back(s.to_string());
    std::sort(report.final_playlist.begin(), report.final_playlist.end());
    report.final_frame = frame.shown();
    report.dj_bindings = dj.bindings();
    report.player_deliveries = player.deliveries();
    report.frame_deliveries = frame.deliveries();
    return report;
}

std::string RoomDjReport::to_json() const {
    nlohmann::json j;
    j["names"] = names;
    j["playlist_timeline"] = nlohmann::json::array();
    for (const auto& c : playlist_timeline)
        j["playlist_timeline"].push_back({{"t", c.t}, {"songs", c.songs}});
    j["playback_timeline"] = nlohmann::json::array();
    for (const auto& c : playback_timeline)
        j["playback_timeline"].push_back({{"t", c.t}, {"song", c.song}});
    j["frame_timeline"] = nlohmann::json::array();
    for (const auto& c : frame_timeline)
        j["frame_timeline"].push_back({{"t", c.t}, {"artwork", c.artwork}});
    j["final_playlist"] = final_playlist;
    j["final_frame"] = final_frame;
    j["dj_bindings"] = dj_bindings;
    j["player_deliveries"] = player_deliveries;
    j["frame_deliveries"] = frame_deliveries;
    return j.dump(2);
}

}  // namespace gs
