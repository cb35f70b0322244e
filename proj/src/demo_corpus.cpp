#include "sunset/demo_corpus.hpp"

#include <string>
#include <vector>

#include "json.hpp"
#include "sunset/extraction.hpp"
#include "sunset/util.hpp"

namespace sunset {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

// Response formatting the extraction parser has to cope with.
enum Style { kPlain = 0, kFenced = 1, kPythonish = 2 };

struct DemoEvent {
  const char* key;   // date key as emitted by the "model" (may be invalid)
  const char* text;  // event summary, also the embedding fixture key
  std::vector<const char*> stakeholders;
  int group;  // storyline; drives the embedding direction
  bool noisy_stakeholder_list = false;  // fixture lists extras and duplicates
};

struct DemoArticle {
  const char* id;
  const char* published;
  const char* text;
  Style style;
  std::vector<DemoEvent> events;
};

struct DemoGtEntry {
  const char* date;
  std::vector<const char*> sentences;
};

struct DemoTopic {
  const char* id;
  std::vector<DemoArticle> articles;
  std::vector<std::vector<DemoGtEntry>> ground_truths;
};

// "Global News Agency" appears in exactly five events of every topic, so its
// cross-topic counts are balanced and its penalty is zero.
const std::vector<DemoTopic>& demo_topics() {
  static const std::vector<DemoTopic> topics = {
      {"election",
       {
           {"el00", "2023-03-02",
            "Vote counting stalled overnight in Veldora. The Electoral Commission of "
            "Veldora reported irregular tallies from three districts.",
            kPlain,
            {{"2023-03-02",
              "The Electoral Commission of Veldora reported irregular tallies from three "
              "districts and halted the national count.",
              {"Electoral Commission of Veldora", "Global News Agency"},
              0}}},
           {"el01", "2023-03-03",
            "The presidential race remained undecided. The incumbent addressed the nation "
            "and urged calm while auditors reviewed the count.",
            kFenced,
            {{"2023-03-03",
              "The President of Veldora urged calm while auditors reviewed the disputed "
              "national count.",
              {"President of Veldora", "Electoral Commission of Veldora"},
              0}}},
           {"el02", "2023-03-07",
            "Crowds filled the capital square for a third day. Police reported no major "
            "clashes as marches continued into the evening.",
            kPythonish,
            {{"2023-03-07",
              "Large crowds marched in the capital of Veldora to protest the stalled "
              "election count.",
              {"Global News Agency", "Veldora Civic Front"},
              1}}},
           {"el03", "2023-03-08",
            "Opposition leaders met international observers. The Observer Mission "
            "International said the tally audit must be transparent.",
            kPlain,
            {{"2023-03-08",
              "Observer Mission International demanded a transparent audit of the Veldora "
              "tally.",
              {"Observer Mission International", "Veldora Civic Front"},
              1}}},
           {"el04", "2023-03-21",
            "The Veldora Supreme Court issued its ruling. Judges ordered a partial recount "
            "in the three contested districts within two weeks.",
            kFenced,
            {{"2023-03-21",
              "The Veldora Supreme Court ordered a partial recount in three contested "
              "districts.",
              {"Veldora Supreme Court", "Global News Agency"},
              2}}},
           {"el05", "2023-03-22",
            "Legal analysts parsed the recount order. The commission said it would comply "
            "and publish district level results.",
            kPlain,
            {{"2023-03-22",
              "The Electoral Commission of Veldora said it would comply with the Supreme "
              "Court recount order.",
              {"Electoral Commission of Veldora", "Veldora Supreme Court"},
              2}}},
           {"el06", "2023-04-11",
            "Polling stations reopened in the contested districts. Turnout was heavy and "
            "counting proceeded under observer supervision.",
            kPythonish,
            {{"2023-04-11",
              "Voters in the contested districts of Veldora cast ballots again under "
              "observer supervision.",
              {"Observer Mission International", "Global News Agency"},
              3}}},
           {"el07", "2023-04-12",
            "The rerun results arrived quickly. Mara Quist widened her margin and her "
            "rival conceded the race by phone.",
            kPlain,
            {{"2023-04-12",
              "Mara Quist won the rerun vote in the contested districts and her rival "
              "conceded.",
              {"Mara Quist", "Global News Agency"},
              3}}},
           {"el08", "2023-04-13",
            "A short wire update with no clear event content. Editors later replaced this "
            "item with a full report.",
            kPlain,
            {}},  // the model returns an empty mapping for this one
           {"el09", "2023-03-09",
            "A retrospective on the protest week. The piece revisited the marches and the "
            "audit demands that followed the stalled count.",
            kFenced,
            {{"2023-03-09",
              "Protest organizers in Veldora claimed the marches forced the audit of the "
              "stalled count.",
              {"Veldora Civic Front", "President of Veldora"},
              1}}},
       },
       {{{"2023-03-02",
          {"The election count in Veldora stalled after irregular district tallies were "
           "reported."}},
         {"2023-03-07", {"Protesters marched in the capital over the stalled count."}},
         {"2023-03-21",
          {"The Supreme Court ordered a partial recount in the contested districts."}},
         {"2023-04-11", {"Contested districts voted again and Mara Quist won the rerun."}}}}},
      {"eruption",
       {
           {"er00", "2022-01-15",
            "Mount Taron erupted before dawn. The observatory recorded a towering ash "
            "plume and continuous tremors through the morning.",
            kPlain,
            {{"2022-01-15",
              "Mount Taron erupted and the Mount Taron Observatory recorded a towering ash "
              "plume.",
              {"Mount Taron Observatory", "Global News Agency"},
              0}}},
           {"er01", "2022-01-16",
            "Scientists briefed reporters on the eruption. Gas readings stayed elevated "
            "and the alert level remained at red.",
            kFenced,
            {{"2022-01-16",
              "The Mount Taron Observatory kept the alert level at red as gas readings "
              "stayed elevated.",
              {"Mount Taron Observatory", "Dr. Elena Vasquez"},
              0}}},
           {"er02", "2022-01-18",
            "Evacuation convoys left the slopes at first light. The Civil Defense "
            "Authority moved twelve thousand residents to inland shelters.",
            kPythonish,
            {{"2022-01-18",
              "The Civil Defense Authority evacuated twelve thousand residents from the "
              "slopes of Mount Taron.",
              {"Civil Defense Authority", "Global News Agency"},
              1}}},
           {"er03", "2022-01-19",
            "Shelter capacity was strained. The prime minister toured the inland camps and "
            "promised additional cots and water.",
            kPlain,
            {{"2022-01-19",
              "Prime Minister Anders Holt toured the evacuation shelters and promised "
              "additional supplies.",
              {"Prime Minister Anders Holt", "Civil Defense Authority"},
              1}}},
           {"er04", "2022-01-22",
            "Aviation authorities acted on the drifting ash. Regional airspace closed and "
            "carriers canceled more than two hundred flights.",
            kFenced,
            {{"2022-01-22",
              "Regional airspace closed over the drifting ash from Mount Taron and "
              "hundreds of flights were canceled.",
              {"Regional Aviation Board", "Global News Agency"},
              2}}},
           {"er05", "2022-01-23",
            "Airlines rebooked stranded passengers. The ash cloud drifted east and "
            "forecasters expected the closure to last several days.",
            kPlain,
            {{"2022-01-23",
              "Forecasters expected the airspace closure around Mount Taron to last "
              "several days.",
              {"Regional Aviation Board", "Mount Taron Observatory"},
              2}}},
           {"er06", "2022-02-05",
            "Recovery planning began in the ashfall zone. An aid package was announced for "
            "farms buried under ash.",
            kPythonish,
            {{"2022-02-05",
              "An aid package was announced for farms buried under ash from Mount Taron.",
              {"Ashfall Response Team", "Prime Minister Anders Holt",
               "Global News Agency"},
              3}}},
           {"er07", "2022-02-06",
            "Volunteer crews cleared roofs and roads. The response team said the ashfall "
            "zone cleanup would take months.",
            kPlain,
            {{"2022-02-06",
              "The Ashfall Response Team said the cleanup of the ashfall zone would take "
              "months.",
              {"Ashfall Response Team", "Civil Defense Authority"},
              3,
              /*noisy_stakeholder_list=*/true}}},
           {"er08", "2022-01-17",
            "A feature on the mountain villages. Residents recalled the last eruption and "
            "watched the plume from their fields.",
            kFenced,
            {{"2021-13-45",  // unusable date: falls back to the published date
              "Villagers near Mount Taron watched the ash plume and recalled the last "
              "eruption.",
              {"Global News Agency", "Mount Taron Observatory"},
              0}}},
           {"er09", "2022-02-07",
            "A two part dispatch. Seismicity eased at the summit while farm cleanup "
            "continued in the lowlands.",
            kPlain,
            {{"2022-02-07",
              "Seismicity eased at the summit of Mount Taron as the eruption wound down.",
              {"Mount Taron Observatory", "Dr. Elena Vasquez"},
              0},
             {"2022-02-07",
              "Farm cleanup continued across the ashfall zone with volunteer crews.",
              {"Ashfall Response Team"},
              3}}},
       },
       {{{"2022-01-15", {"Mount Taron erupted with a towering ash plume."}},
         {"2022-01-18",
          {"Thousands of residents were evacuated from the slopes to inland shelters."}},
         {"2022-01-22", {"Airspace closed over the ash cloud and flights were canceled."}},
         {"2022-02-05", {"An aid package was announced for farms buried under ash."}}}}},
      {"oilspill",
       {
           {"os00", "2021-04-20",
            "An explosion tore through the Meridian Deepwater rig off the southern coast. "
            "Crews abandoned the platform as fire spread overnight.",
            kPlain,
            {{"2021-04-20",
              "An explosion tore through the Meridian Deepwater rig operated by Meridian "
              "Petroleum off the southern coast.",
              {"Meridian Petroleum", "Coastal Guard", "Global News Agency"},
              0}}},
           {"os01", "2021-04-21",
            "Rescue boats searched the waters near the burning rig. The operator confirmed "
            "that all but two crew members were accounted for.",
            kFenced,
            {{"2021-04-21",
              "Meridian Petroleum Corp confirmed that all but two crew members of the "
              "Deepwater rig were accounted for.",
              {"Meridian Petroleum Corp", "Coastal Guard"},
              0}}},
           {"os02", "2021-05-02",
            "The slick reached coastal shallows two weeks after the blast. Authorities "
            "closed fishing grounds along eighty kilometers of shore.",
            kPythonish,
            {{"2021-05-02",
              "The oil slick from the Meridian rig reached coastal shallows and fishing "
              "grounds were closed.",
              {"Gulf Fisheries Board", "Global News Agency"},
              1}}},
           {"os03", "2021-05-03",
            "Fishing crews tied up at the docks. The fisheries board promised compensation "
            "talks while harbor workers demanded faster action.",
            kPlain,
            {{"2021-05-03",
              "The Gulf Fisheries Board promised compensation talks as fishing crews "
              "stayed in port.",
              {"Gulf Fisheries Board", "Harbor Workers Collective"},
              1,
              /*noisy_stakeholder_list=*/true}}},
           {"os04", "2021-05-18",
            "Cleanup barges worked the shoreline. Volunteers in protective suits raked "
            "tar from the beaches while skimmers circled offshore.",
            kFenced,
            {{"2021-05-18",
              "Cleanup barges and volunteers raked oil tar from the beaches along the "
              "southern coast.",
              {"United Relief Fund", "Coastal Guard", "Global News Agency"},
              2}}},
           {"os05", "2021-05-19",
            "A marine toxicologist led shoreline surveys. Early samples suggested the "
            "dispersant mix was keeping oil off the deepest reefs.",
            kPlain,
            {{"2021-05-19",
              "Dr. Elena Vasquez led shoreline surveys measuring oil residue on the "
              "southern reefs.",
              {"Dr. Elena Vasquez", "United Relief Fund"},
              2}}},
           {"os06", "2021-06-10",
            "Investigators released preliminary findings. A failed safety valve and "
            "skipped inspections were blamed for the April blast.",
            kPythonish,
            {{"2021-06-10",
              "Investigators blamed a failed safety valve on the Meridian rig and "
              "regulators announced fines for Meridian Petroleum.",
              {"Meridian Petroleum", "Global News Agency"},
              3}}},
           {"os07", "2021-06-11",
            "The operator responded to the findings. Meridian Petroleum accepted the fine "
            "schedule and pledged new inspection protocols.",
            kPlain,
            {{"2021-06-11",
              "Meridian Petroleum accepted the fines over the rig blast and pledged new "
              "inspection protocols.",
              {"Meridian Petroleum", "Gulf Fisheries Board"},
              3}}},
           {"os08", "2021-05-20",
            "A relief roundup from the coast. Donations reached the united fund as beach "
            "crews extended the cleanup south.",
            kFenced,
            {{"2021-05-20",
              "Donations reached the United Relief Fund as beach cleanup crews extended "
              "south along the coast.",
              {"United Relief Fund", "Harbor Workers Collective", "Global News Agency"},
              2}}},
           {"os09", "2021-06-12",
            "A wrap up of the spill response so far. The piece revisited the blast, the "
            "closures and the cleanup milestones.",
            kPlain,
            {{"2021-06-12",
              "A review of the Meridian spill response revisited the rig blast and the "
              "cleanup milestones.",
              {"Meridian Petroleum"},
              3}}},
       },
       {{{"2021-04-20",
          {"An explosion destroyed the Meridian Deepwater rig and started a large oil "
           "spill."}},
         {"2021-05-02",
          {"The oil slick spread along the coast and fishing grounds were closed."}},
         {"2021-05-18",
          {"Cleanup crews and volunteers raked oil tar from the affected beaches."}},
         {"2021-06-10",
          {"Investigators blamed a failed safety valve and regulators announced fines."}}},
        {{"2021-04-20", {"The Meridian rig exploded off the southern coast."}},
         {"2021-05-03", {"Fishing crews stayed in port awaiting compensation talks."}},
         {"2021-06-11",
          {"Meridian Petroleum accepted fines and pledged new inspection protocols."}}}}},
  };
  return topics;
}

struct WikidataFixture {
  const char* query;  // "label:...", "interface:...", "officeholder:..."
  const char* id;
  const char* label;
  const char* match;  // "label" or "alias"
};

const std::vector<WikidataFixture>& wikidata_fixtures() {
  static const std::vector<WikidataFixture> fixtures = {
      {"label:Meridian Petroleum", "Q100", "Meridian Petroleum", "label"},
      {"label:Meridian Petroleum Corp", "Q100", "Meridian Petroleum", "alias"},
      {"label:Coastal Guard", "Q101", "Coastal Guard", "label"},
      {"label:Elena Vasquez", "Q102", "Elena Vasquez", "label"},
      {"label:United&&Relief&&Fund", "Q103", "United Relief Fund", "label"},
      {"interface:Gulf Fisheries Board", "Q104", "Gulf Fisheries Board", "label"},
      {"label:Mount Taron Observatory", "Q200", "Mount Taron Observatory", "label"},
      {"label:Civil Defense Authority", "Q201", "Civil Defense Authority", "label"},
      {"label:Anders Holt", "Q202", "Anders Holt", "label"},
      {"label:Ashfall Response Team", "Q203", "Ashfall Response Team", "label"},
      {"label:Regional Aviation Board", "Q204", "Regional Aviation Board", "label"},
      {"label:President of Veldora", "Q300", "President of Veldora", "label"},
      {"officeholder:Q300", "Q301", "", ""},
      {"label:Mara Quist", "Q301", "Mara Quist", "label"},
      {"label:Electoral Commission of Veldora", "Q302", "Electoral Commission of Veldora",
       "label"},
      {"label:Veldora Supreme Court", "Q303", "Veldora Supreme Court", "label"},
      {"label:Observer Mission International", "Q304", "Observer Mission International",
       "alias"},
      {"label:Veldora Civic Front", "Q305", "Veldora Civic Front", "label"},
      {"label:Global News Agency", "Q900", "Global News Agency", "label"},
      // "Harbor Workers Collective" stays unresolved on purpose.
  };
  return fixtures;
}

// Storyline directions: regular tetrahedron padded into 8 dimensions, so
// same-group events are near-parallel and cross-group cosines sit near -1/3.
Eigen::VectorXd demo_vector(const std::string& text, int group) {
  static const double dirs[4][3] = {
      {1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
  Eigen::VectorXd v = Eigen::VectorXd::Zero(8);
  const double inv = 1.0 / std::sqrt(3.0);
  for (int i = 0; i < 3; ++i) v[i] = dirs[group % 4][i] * inv;
  const std::string h = sha256_hex(text);
  for (int i = 0; i < 8; ++i) {
    const int byte = std::stoi(h.substr(static_cast<std::size_t>(i) * 2, 2), nullptr, 16);
    v[i] += 0.03 * (static_cast<double>(byte) / 255.0 - 0.5);
  }
  return v;
}

std::string event_response(const DemoArticle& article) {
  ordered_json dict = ordered_json::object();
  for (const auto& e : article.events) dict[e.key] = e.text;
  switch (article.style) {
    case kFenced:
      return "Here is the dictionary you asked for:\n```json\n" + dict.dump(2) + "\n```\n";
    case kPythonish: {
      std::string out = "{";
      bool first = true;
      for (const auto& e : article.events) {
        if (!first) out += ", ";
        first = false;
        out += std::string("'") + e.key + "': '" + e.text + "'";
      }
      out += ",}";  // trailing comma on purpose
      return out;
    }
    case kPlain:
    default:
      return dict.dump();
  }
}

std::string stakeholder_response(const DemoEvent& event) {
  json list = json::array();
  if (event.noisy_stakeholder_list) {
    // Duplicates (case-insensitive) and overflow entries the parser must drop.
    list.push_back(event.stakeholders.front());
    list.push_back(to_lower(event.stakeholders.front()));
    for (std::size_t i = 1; i < event.stakeholders.size(); ++i) {
      list.push_back(event.stakeholders[i]);
    }
    list.push_back("Unnamed Bystander");
    list.push_back("Another Extra Name");
    return "Sure, here is the list:\n" + list.dump();
  }
  for (const auto* s : event.stakeholders) list.push_back(s);
  return list.dump();
}

}  // namespace

DemoLayout write_demo_corpus(const fs::path& root) {
  DemoLayout layout;
  layout.corpus_root = root / "corpus";
  layout.llm_fixtures = root / "fixtures" / "llm";
  layout.embedding_fixtures = root / "fixtures" / "embeddings";
  layout.wikidata_fixtures = root / "fixtures" / "wikidata";
  fs::create_directories(layout.llm_fixtures);
  fs::create_directories(layout.embedding_fixtures);
  fs::create_directories(layout.wikidata_fixtures);

  for (const auto& topic : demo_topics()) {
    const fs::path topic_dir = layout.corpus_root / topic.id;
    fs::create_directories(topic_dir);

    std::string articles;
    for (const auto& a : topic.articles) {
      json rec{{"id", a.id},
               {"topic_id", topic.id},
               {"published_date", a.published},
               {"text", a.text}};
      articles += rec.dump();
      articles += '\n';

      Article art{a.id, topic.id, *Date::parse(a.published), a.text};
      write_file(layout.llm_fixtures / (sha256_hex(build_event_prompt(art)) + ".txt"),
                 event_response(a));
      for (const auto& e : a.events) {
        write_file(layout.llm_fixtures /
                       (sha256_hex(build_stakeholder_prompt(art, e.text)) + ".txt"),
                   stakeholder_response(e));
        const Eigen::VectorXd v = demo_vector(e.text, e.group);
        json values = json::array();
        for (Eigen::Index i = 0; i < v.size(); ++i) values.push_back(v[i]);
        write_file(layout.embedding_fixtures / (sha256_hex(e.text) + ".json"),
                   values.dump());
      }
    }
    write_file(topic_dir / "articles.jsonl", articles);

    for (std::size_t g = 0; g < topic.ground_truths.size(); ++g) {
      std::string lines;
      for (const auto& entry : topic.ground_truths[g]) {
        json sentences = json::array();
        for (const auto* s : entry.sentences) sentences.push_back(s);
        lines += json{{"date", entry.date}, {"sentences", sentences}}.dump();
        lines += '\n';
      }
      write_file(topic_dir / ("groundtruth." + std::to_string(g) + ".jsonl"), lines);
    }
  }

  for (const auto& f : wikidata_fixtures()) {
    json doc{{"id", f.id}};
    if (f.label[0] != '\0') doc["label"] = f.label;
    if (f.match[0] != '\0') doc["match"] = f.match;
    write_file(layout.wikidata_fixtures / (sha256_hex(f.query) + ".json"), doc.dump());
  }
  return layout;
}

RunConfig demo_run_config(const fs::path& root, const fs::path& out_dir) {
  const DemoLayout layout{root / "corpus", root / "fixtures" / "llm",
                          root / "fixtures" / "embeddings", root / "fixtures" / "wikidata"};
  RunConfig cfg;
  cfg.corpus_root = layout.corpus_root;
  cfg.out_dir = out_dir;
  cfg.llm_fixture_mode = true;
  cfg.llm_fixtures = layout.llm_fixtures;
  cfg.embedding_fixture_mode = true;
  cfg.embedding_fixtures = layout.embedding_fixtures;
  cfg.wikidata_fixture_mode = true;
  cfg.wikidata_fixtures = layout.wikidata_fixtures;
  return cfg;
}

}  // namespace sunset
