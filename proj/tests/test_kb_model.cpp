#include <doctest.h>

#include <fstream>
#include <sstream>

#include "mates/kb_model.hpp"
#include "mates/rule_dsl.hpp"
#include "support/generators.hpp"

using namespace mates;

namespace {

KnowledgeBase small_kb() {
    KnowledgeBase kb;
    kb.symptoms = {{SymptomId("fever"), "Fever"}, {SymptomId("cough"), "Cough"}};
    kb.diseases = {{DiseaseId("flu"), "Flu", {SymptomId("fever"), SymptomId("cough")}, "rest", "worse"}};
    return kb;
}

/// Symptom ids listed on the tb row of the shipped file, read with plain
/// string handling rather than the DSL parser.
std::vector<std::string> raw_tb_row() {
    std::ifstream in(default_kb_path());
    std::string line;
    bool in_tb = false;
    while (std::getline(in, line)) {
        if (line.rfind("DISEASE ", 0) == 0) in_tb = line.rfind("DISEASE tb ", 0) == 0;
        const auto pos = line.find("SYMPTOMS:");
        if (!in_tb || pos == std::string::npos) continue;
        std::vector<std::string> ids;
        std::stringstream rest(line.substr(pos + 9));
        std::string item;
        while (std::getline(rest, item, ',')) {
            item.erase(0, item.find_first_not_of(' '));
            item.erase(item.find_last_not_of(' ') + 1);
            ids.push_back(item);
        }
        return ids;
    }
    return {};
}

} // namespace

TEST_SUITE("kb_model") {

TEST_CASE("identifier lexical class") {
    CHECK(is_identifier("night_sweat"));
    CHECK(is_identifier("a1_"));
    CHECK_FALSE(is_identifier(""));
    CHECK_FALSE(is_identifier("1abc"));
    CHECK_FALSE(is_identifier("_x"));
    CHECK_FALSE(is_identifier("Cough"));
    CHECK_FALSE(is_identifier("dragon pox"));
}

TEST_CASE("default KB is consistent and has the published cardinalities") {
    const auto& kb = default_kb();
    CHECK(validate(kb).empty());
    CHECK(kb.symptoms.size() == 40);
    REQUIRE(kb.diseases.size() == 10);
    for (const auto& d : kb.diseases) CHECK_FALSE(d.symptoms.empty());

    const std::vector<std::string> expected = {"hiv_aids", "tb", "malaria", "sti", "hepatitis_b",
                                               "hepatitis_c", "anemia", "uti", "mental_health_conditions",
                                               "hypertension"};
    for (std::size_t i = 0; i < expected.size(); ++i) CHECK(kb.diseases[i].id.str() == expected[i]);

    CHECK(kb.symptoms.front().id.str() == "cough");
    CHECK(kb.symptoms.back().id.str() == "back_pain");
    CHECK(kb.find_symptom(SymptomId("bad_smell_urine"))->display_name == "Urine that Smells Bad");
}

TEST_CASE("default KB tb and malaria texts") {
    const auto& kb = default_kb();
    const DiseaseRecord* tb = kb.find_disease(DiseaseId("tb"));
    REQUIRE(tb);
    for (const char* s : {"cough", "weight_loss", "night_sweat", "fever"})
        CHECK(std::find(tb->symptoms.begin(), tb->symptoms.end(), SymptomId(s)) != tb->symptoms.end());
    CHECK(tb->care_treatment ==
          "Ethambutol, isoniazid, rifampicin (for six months) and pyrazinamide for two months then isoniazid "
          "and rifampicin for additional four months. Isoniazid therapy followed by the BCG vaccination (mother).");
    CHECK(tb->if_untreated == "Delivering premature baby or low birth weight (pulmonary TB). Perinatal death");
    CHECK(tb->if_untreated.find("premature baby") != std::string::npos);
    CHECK(tb->if_untreated.find("low birth weight") != std::string::npos);

    const DiseaseRecord* malaria = kb.find_disease(DiseaseId("malaria"));
    REQUIRE(malaria);
    CHECK(malaria->if_untreated ==
          "Contribute to maternal anemia, maternal death, stillbirth, spontaneous abortion, low birth weight.");
    CHECK(malaria->care_treatment.rfind("IPTp-SP at every ANC visit in the second trimester", 0) == 0);
}

TEST_CASE("validate reports an undeclared symptom by name") {
    auto kb = small_kb();
    kb.diseases[0].symptoms.push_back(SymptomId("xyz"));
    const auto v = validate(kb);
    REQUIRE(v.size() == 1);
    CHECK(v[0].kind == Violation::Kind::undeclared_symptom);
    CHECK(v[0].id == "xyz");
}

TEST_CASE("validate reports a duplicated symptom id once") {
    auto kb = small_kb();
    kb.symptoms.push_back({SymptomId("fever"), "Fever again"});
    const auto v = validate(kb);
    REQUIRE(v.size() == 1);
    CHECK(v[0].kind == Violation::Kind::duplicate_id);
    CHECK(v[0].id == "fever");
}

TEST_CASE("validate field checks") {
    SUBCASE("empty symptom list") {
        auto kb = small_kb();
        kb.diseases[0].symptoms.clear();
        const auto v = validate(kb);
        REQUIRE(v.size() == 1);
        CHECK(v[0].kind == Violation::Kind::empty_field);
    }
    SUBCASE("empty texts") {
        auto kb = small_kb();
        kb.diseases[0].care_treatment.clear();
        kb.symptoms[0].display_name.clear();
        CHECK(validate(kb).size() == 2);
    }
    SUBCASE("line break in text") {
        auto kb = small_kb();
        kb.diseases[0].if_untreated = "two\nlines";
        const auto v = validate(kb);
        REQUIRE(v.size() == 1);
        CHECK(v[0].kind == Violation::Kind::invalid_text);
    }
    SUBCASE("bad identifier") {
        auto kb = small_kb();
        kb.symptoms[1].id = SymptomId("Cough");
        kb.diseases[0].symptoms[1] = SymptomId("Cough");
        const auto v = validate(kb);
        REQUIRE(v.size() == 1);
        CHECK(v[0].kind == Violation::Kind::invalid_id);
    }
}

TEST_CASE("validate rule checks") {
    auto kb = small_kb();
    const Fact fever{"symptom", {"fever"}};
    SUBCASE("reserved predicates must reference declared ids") {
        kb.rules.push_back({"r", PremiseExpr::atom({"symptom", {"rash"}}), {{"disease", {"measles"}}}});
        const auto v = validate(kb);
        REQUIRE(v.size() == 2);
        CHECK(v[0].kind == Violation::Kind::undeclared_symptom);
        CHECK(v[1].kind == Violation::Kind::undeclared_disease);
        CHECK(v[1].id == "measles");
    }
    SUBCASE("self loop") {
        kb.rules.push_back({"r", PremiseExpr::atom(fever), {{"flag", {}}, fever}});
        const auto v = validate(kb);
        REQUIRE(v.size() == 1);
        CHECK(v[0].kind == Violation::Kind::self_loop);
    }
    SUBCASE("single-operand AND node") {
        kb.rules.push_back({"r", PremiseExpr::all_of({PremiseExpr::atom(fever)}), {{"flag", {}}}});
        const auto v = validate(kb);
        REQUIRE(v.size() == 1);
        CHECK(v[0].kind == Violation::Kind::malformed_premise);
    }
    SUBCASE("duplicate rule names and empty conclusion") {
        kb.rules.push_back({"r", PremiseExpr::atom(fever), {{"flag", {}}}});
        kb.rules.push_back({"r", PremiseExpr::atom(fever), {}});
        const auto v = validate(kb);
        REQUIRE(v.size() == 2);
        CHECK(v[0].kind == Violation::Kind::duplicate_id);
        CHECK(v[1].kind == Violation::Kind::empty_field);
    }
}

TEST_CASE("incidence lookups") {
    const auto& kb = default_kb();
    CHECK(incidence(kb, DiseaseId("tb"), SymptomId("cough")) == 1);

    // Expected value read straight from the data file.
    const auto row = raw_tb_row();
    REQUIRE_FALSE(row.empty());
    CHECK(std::find(row.begin(), row.end(), "genital_ulcers") == row.end());
    CHECK(incidence(kb, DiseaseId("tb"), SymptomId("genital_ulcers")) == 0);
    for (const auto& s : kb.symptoms) {
        const bool listed = std::find(row.begin(), row.end(), s.id.str()) != row.end();
        CHECK(incidence(kb, DiseaseId("tb"), s.id) == (listed ? 1 : 0));
    }

    CHECK_THROWS_AS(incidence(kb, DiseaseId("dragonpox"), SymptomId("cough")), UnknownIdError);
    CHECK_THROWS_AS(incidence(kb, DiseaseId("tb"), SymptomId("nosuch")), UnknownIdError);
}

TEST_CASE("incidence matrix agrees with symptom lists on random KBs") {
    testing::Rng rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const auto kb = testing::make_kb(rng, {.max_symptoms = 150, .max_diseases = 12, .max_rules = 0});
        const IncidenceMatrix m(kb);
        REQUIRE(m.disease_count() == kb.diseases.size());
        REQUIRE(m.symptom_count() == kb.symptoms.size());
        for (std::size_t d = 0; d < kb.diseases.size(); ++d) {
            int row_sum = 0;
            for (std::size_t s = 0; s < kb.symptoms.size(); ++s) {
                const int entry = m.at(d, s);
                REQUIRE((entry == 0 || entry == 1));
                REQUIRE(entry == incidence(kb, kb.diseases[d].id, kb.symptoms[s].id));
                row_sum += entry;
            }
            REQUIRE(static_cast<std::size_t>(row_sum) == kb.diseases[d].symptoms.size());
        }
    }
}

TEST_CASE("incidence matrix bounds") {
    const IncidenceMatrix m(default_kb());
    CHECK_THROWS_AS(m.at(10, 0), std::out_of_range);
    CHECK_THROWS_AS(m.at(0, 40), std::out_of_range);
    const std::vector<std::size_t> bad = {40};
    CHECK_THROWS_AS(m.mask(bad), std::out_of_range);
}

} // TEST_SUITE
