#include "sentilens/synthetic.hpp"

#include <algorithm>
#include <array>
#include <fstream>

#include "json.hpp"
#include "sentilens/util.hpp"

namespace sentilens {

namespace {

using nlohmann::json;

// Product nouns, head-heavy Zipf order. All of them carry a noun tag in
// the bundled dictionary, so they are aspect-term candidates.
const std::vector<std::string>& nouns() {
    static const std::vector<std::string> v = {
        "fender", "pedal", "cable", "cord", "string", "guitar", "amp", "pick", "capo", "tuner",
        "strap", "bridge", "neck", "case", "stand", "microphone", "bass", "knob", "jack",
        "fret", "fretboard", "drum", "cymbal", "stick", "snare", "keyboard", "piano",
        "violin", "bow", "ukulele", "banjo", "mandolin", "harmonica", "reed", "mouthpiece",
        "sax", "clarinet", "flute", "trumpet", "trombone", "valve", "horn", "speaker",
        "cabinet", "cone", "tweeter", "woofer", "preamp", "interface", "mixer", "channel",
        "fader", "monitor", "headphone", "earbud", "cushion", "foam", "windscreen",
        "filter", "boom", "arm", "clamp", "mount", "adapter", "connector", "supply",
        "battery", "charger", "transformer", "pickup", "humbucker", "coil", "pot",
        "switch", "toggle", "selector", "nut", "saddle", "tremolo", "tailpiece", "truss",
        "rod", "bag", "pocket", "zipper", "handle", "latch", "hinge", "shell", "finish",
        "lacquer", "binding", "inlay", "marker", "polish", "cloth", "cleaner", "oil",
        "conditioner", "humidifier", "hygrometer", "gauge", "winder", "cutter", "plier",
        "wrench", "screwdriver", "screw", "bolt", "washer", "spring", "felt", "mallet",
        "brush", "beater", "pedalboard", "velcro", "tape", "organizer", "looper", "delay",
        "reverb", "chorus", "flanger", "phaser", "overdrive", "distortion", "fuzz",
        "compressor", "equalizer", "booster", "buffer", "splitter", "footswitch",
        "expression", "wah", "octave", "harmonizer", "metronome", "timer", "display",
        "screen", "button", "dial", "meter", "needle", "chart", "book", "sheet", "page",
        "binder", "folder", "lamp", "bulb", "led", "clip", "holder", "hook", "hanger",
        "dolly", "cart", "wheel", "caster", "rack", "tray", "shelf", "locker", "stool",
        "bench", "cork", "ligature", "rosin", "chinrest", "endpin", "mute", "slide",
        "whistle", "kazoo", "shaker", "tambourine", "cowbell", "woodblock", "triangle",
        "chime", "gong", "djembe", "bongo", "conga", "cajon", "maraca", "castanet",
        "glockenspiel", "xylophone", "marimba", "vibraphone", "accordion", "bellows",
        "drone", "fiddle", "lute", "zither", "dulcimer", "autoharp", "kalimba", "ocarina",
        "recorder", "bagpipe", "chanter", "didgeridoo",
    };
    return v;
}

// Strongly polar adjectives; the bundled dictionaries score these so the
// merged weight lands near +/-0.45.
const std::vector<std::string>& strong_pos() {
    static const std::vector<std::string> v = {
        "great", "nice", "excellent", "amazing", "fantastic", "wonderful", "perfect",
        "awesome", "superb", "solid", "sturdy", "reliable", "smooth", "crisp", "warm",
        "comfortable", "durable", "beautiful", "impressive", "outstanding",
    };
    return v;
}

const std::vector<std::string>& strong_neg() {
    static const std::vector<std::string> v = {
        "terrible", "awful", "horrible", "poor", "disappointing", "useless", "defective",
        "broken", "flimsy", "noisy", "harsh", "muddy", "dull", "weak", "faulty",
        "unreliable", "uncomfortable", "fragile", "scratchy", "unusable",
    };
    return v;
}

// Mildly negative words; they stay below the sentiment-word threshold
// but are still consistently negative labels in this corpus.
const std::vector<std::string>& mild_neg() {
    static const std::vector<std::string> v = {"mediocre", "underwhelming", "lackluster",
                                               "forgettable"};
    return v;
}

const std::vector<std::string>& casual_phrases() {
    static const std::vector<std::string> v = {
        "Decent price point, nothing exceptional.",
        "Gets the job done well enough.",
        "The cable is fine for the price.",
        "Nothing exceptional, mind you, but it gets the job done.",
        "Fine by me, and the price was right.",
        "I would not mind a lower price point.",
        "Does the job well enough.",
        "Decent enough for the money, nothing fancy.",
    };
    return v;
}

const std::vector<std::string>& reviewer_names() {
    static const std::vector<std::string> v = {
        "Alex M.", "Jordan", "Sam K.", "Casey", "Riley P.", "Morgan", "Jamie L.",
        "Taylor", "Drew", "Quinn R.", "Pat S.", "Chris B.", "Dana", "Robin W.",
        "Lee", "Avery T.", "Shawn", "Kerry", "Jesse D.", "Skyler",
    };
    return v;
}

struct Gen {
    Rng rng;
    std::vector<double> noun_cdf;

    explicit Gen(std::uint64_t seed) : rng(seed) {
        double acc = 0.0;
        for (std::size_t i = 0; i < nouns().size(); ++i) {
            acc += 1.0 / static_cast<double>(i + 3);
            noun_cdf.push_back(acc);
        }
    }

    const std::string& pick(const std::vector<std::string>& pool) {
        return pool[rng.uniform_int(pool.size())];
    }

    const std::string& noun() {
        const double u = rng.uniform() * noun_cdf.back();
        const auto it = std::upper_bound(noun_cdf.begin(), noun_cdf.end(), u);
        return nouns()[static_cast<std::size_t>(it - noun_cdf.begin())];
    }

    std::string base36(int n) {
        static const char digits[] = "0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ";
        std::string s;
        for (int i = 0; i < n; ++i) s.push_back(digits[rng.uniform_int(36)]);
        return s;
    }
};

std::string cap(std::string s) {
    if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = static_cast<char>(s[0] - 'a' + 'A');
    return s;
}

std::string pos_opener(Gen& g) {
    const std::string n1 = g.noun();
    const std::string a1 = g.pick(strong_pos());
    switch (g.rng.uniform_int(6)) {
        case 0: return "This " + n1 + " is " + a1 + " and I use it every day.";
        case 1: return cap(a1) + " " + n1 + ", exactly what I was hoping for.";
        case 2: return "I bought this " + n1 + " for my " + g.noun() + " and it is " + a1 + ".";
        case 3: return "LOVE this " + n1 + ", the build is " + a1 + ".";
        case 4: return "I love how " + a1 + " this " + n1 + " feels.";
        default: return "The " + n1 + " arrived in 2 days and it sounds " + a1 + ".";
    }
}

std::string pos_detail(Gen& g) {
    const std::string n1 = g.noun();
    const std::string a1 = g.pick(strong_pos());
    switch (g.rng.uniform_int(5)) {
        case 0: return "The " + n1 + " feels " + a1 + " after 3 months of playing.";
        case 1: return "Even the " + n1 + " is " + a1 + " for the money.";
        case 2: return "My old " + n1 + " broke, and this one is far more " + a1 + ".";
        case 3: return "Paired with my " + g.noun() + ", the " + n1 + " sounds " + a1 + ".";
        default: return "The " + n1 + " and the " + g.noun() + " are both " + a1 + ".";
    }
}

std::string pos_closer(Gen& g) {
    switch (g.rng.uniform_int(4)) {
        case 0: return "I would recommend it to anyone.";
        case 1: return "Would buy again without thinking twice.";
        case 2: return "Five stars from me.";
        default: return "My whole band wants one now.";
    }
}

std::string neutral_detail(Gen& g) {
    const std::string n1 = g.noun();
    switch (g.rng.uniform_int(4)) {
        case 0: return "The " + n1 + " does what it should.";
        case 1: return "It works with my " + g.noun() + " out of the box.";
        case 2: return "Shipping took about 5 days.";
        default: return "The " + n1 + " is what you would expect at this price.";
    }
}

std::string neg_opener(Gen& g, bool strong) {
    const std::string n1 = g.noun();
    const std::string a1 = strong ? g.pick(strong_neg()) : g.pick(mild_neg());
    switch (g.rng.uniform_int(5)) {
        case 0: return "This " + n1 + " is " + a1 + ".";
        case 1: return "The " + n1 + " turned out to be " + a1 + " and I regret the purchase.";
        case 2: return cap(a1) + " " + n1 + ", save your money.";
        case 3: return "Sadly the " + n1 + " sounds " + a1 + " with my " + g.noun() + ".";
        default: return "I found the " + n1 + " to be " + a1 + " right out of the box.";
    }
}

std::string neg_detail(Gen& g) {
    const std::string n1 = g.noun();
    switch (g.rng.uniform_int(5)) {
        case 0: return "It broke after 2 weeks.";
        case 1: return "The " + n1 + " stopped working after a month.";
        case 2: return "The " + n1 + " is " + g.pick(strong_neg()) + " too.";
        case 3: return "I returned it the same week.";
        default: return "Customer service could not fix the " + n1 + " either.";
    }
}

std::string neg_closer(Gen& g) {
    switch (g.rng.uniform_int(3)) {
        case 0: return "Would not recommend.";
        case 1: return "One star says it all.";
        default: return "Look elsewhere.";
    }
}

std::string make_text(int stars, Gen& g) {
    std::vector<std::string> sentences;
    switch (stars) {
        case 5:
            sentences.push_back(pos_opener(g));
            sentences.push_back(pos_detail(g));
            if (g.rng.uniform() < 0.30) sentences.push_back(g.pick(casual_phrases()));
            if (g.rng.uniform() < 0.60) sentences.push_back(pos_closer(g));
            break;
        case 4:
            sentences.push_back(pos_opener(g));
            if (g.rng.uniform() < 0.45) sentences.push_back(g.pick(casual_phrases()));
            else sentences.push_back(neutral_detail(g));
            if (g.rng.uniform() < 0.25) sentences.push_back(pos_closer(g));
            break;
        case 3:
            // Mixed or flat; these fall outside both label buckets.
            if (g.rng.uniform() < 0.5) {
                sentences.push_back(pos_detail(g));
                sentences.push_back(neg_opener(g, false));
            } else {
                sentences.push_back(g.pick(casual_phrases()));
                sentences.push_back(neutral_detail(g));
            }
            break;
        case 2:
            sentences.push_back(neg_opener(g, g.rng.uniform() < 0.70));
            if (g.rng.uniform() < 0.35) sentences.push_back(g.pick(casual_phrases()));
            else sentences.push_back(neg_detail(g));
            break;
        default:
            sentences.push_back(neg_opener(g, true));
            sentences.push_back(neg_detail(g));
            if (g.rng.uniform() < 0.55) sentences.push_back(neg_closer(g));
            break;
    }
    std::string text;
    for (std::size_t i = 0; i < sentences.size(); ++i) {
        if (i) text += ' ';
        text += sentences[i];
    }
    return text;
}

std::string make_summary(int stars, Gen& g) {
    switch (stars) {
        case 5: return cap(g.pick(strong_pos())) + " " + g.noun();
        case 4: return "Happy with this " + g.noun();
        case 3: return "Okay " + g.noun();
        case 2: return "Not impressed";
        default: return cap(g.pick(strong_neg())) + " " + g.noun();
    }
}

// Days since 1970-01-01 for a civil date.
std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const int era = (y >= 0 ? y : y - 399) / 400;
    const int yoe = y - era * 400;
    const int doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const int doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return static_cast<std::int64_t>(era) * 146097 + doe - 719468;
}

}  // namespace

void write_synthetic_dataset(const std::string& path, const SyntheticParams& params) {
    if (params.records < 1) throw UsageError("record count must be positive");
    static const std::array<std::int64_t, 5> base = {217, 250, 772, 2084, 6938};
    constexpr std::int64_t base_total = 10261;

    // Largest-remainder scaling keeps the histogram exact at any size.
    std::array<std::int64_t, 5> counts{};
    std::array<double, 5> frac{};
    std::int64_t assigned = 0;
    for (int s = 0; s < 5; ++s) {
        const double ideal = static_cast<double>(params.records) * base[s] / base_total;
        counts[s] = static_cast<std::int64_t>(ideal);
        frac[s] = ideal - static_cast<double>(counts[s]);
        assigned += counts[s];
    }
    while (assigned < params.records) {
        int pick = 0;
        for (int s = 1; s < 5; ++s)
            if (frac[s] > frac[pick]) pick = s;
        ++counts[pick];
        frac[pick] = -1.0;
        ++assigned;
    }

    Gen g(derive_seed(params.seed, "synth"));
    std::vector<int> stars;
    stars.reserve(static_cast<std::size_t>(params.records));
    for (int s = 0; s < 5; ++s)
        stars.insert(stars.end(), static_cast<std::size_t>(counts[s]), s + 1);
    g.rng.shuffle(stars);

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write dataset: " + path);
    for (const int s : stars) {
        const int year = 2012 + static_cast<int>(g.rng.uniform_int(3));
        const int month = 1 + static_cast<int>(g.rng.uniform_int(12));
        const int day = 1 + static_cast<int>(g.rng.uniform_int(28));
        char datebuf[24];
        std::snprintf(datebuf, sizeof(datebuf), "%02d %d, %d", month, day, year);

        json rec;
        rec["reviewerID"] = "A" + g.base36(13);
        rec["asin"] = "B00" + g.base36(7);
        rec["reviewerName"] = g.pick(reviewer_names());
        const std::int64_t votes = g.rng.uniform() < 0.25 ? static_cast<std::int64_t>(g.rng.uniform_int(9)) : 0;
        const std::int64_t helpful = votes > 0 ? static_cast<std::int64_t>(g.rng.uniform_int(
                                                     static_cast<std::uint64_t>(votes) + 1))
                                               : 0;
        rec["helpful"] = {helpful, votes};
        rec["reviewText"] = make_text(s, g);
        rec["overall"] = static_cast<double>(s);
        rec["summary"] = make_summary(s, g);
        rec["unixReviewTime"] = days_from_civil(year, month, day) * 86400;
        rec["reviewTime"] = datebuf;
        out << rec.dump() << "\n";
    }
    if (!out) throw DataError("write failed: " + path);
}

}  // namespace sentilens
