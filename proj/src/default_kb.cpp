#include <cstdlib>

#include "mates/kb_model.hpp"
#include "mates/rule_dsl.hpp"

#ifndef MATES_DATA_DIR
#define MATES_DATA_DIR "data"
#endif

namespace mates {

std::filesystem::path default_kb_path() {
    if (const char* dir = std::getenv("MATES_DATA_DIR"); dir && *dir)
        return std::filesystem::path(dir) / "maternal_care.kb";
    return std::filesystem::path(MATES_DATA_DIR) / "maternal_care.kb";
}

const KnowledgeBase& default_kb() {
    static const KnowledgeBase kb = load_kb_file(default_kb_path());
    return kb;
}

} // namespace mates
