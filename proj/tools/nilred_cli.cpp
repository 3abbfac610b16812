// nilred command line driver. Talks to the library exclusively through the
// public C interface in nilred.h.

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nilred.h"

namespace {

struct SessionDeleter {
  void operator()(nilred_session* s) const { nilred_session_free(s); }
};
using SessionPtr = std::unique_ptr<nilred_session, SessionDeleter>;

struct ParsedFile {
  nilred_session* session = nullptr;
  nilred_algebra** algebras = nullptr;
  size_t count = 0;

  ~ParsedFile() {
    for (size_t i = 0; i < count; ++i) nilred_algebra_free(algebras[i]);
    nilred_array_free(algebras);
  }
};

int fail(const nilred_session* session, nilred_status status) {
  std::cerr << "error: " << nilred_session_last_error(session) << "\n";
  return static_cast<int>(status);
}

bool read_input(const std::string& path, std::string& out) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    out = ss.str();
    return true;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

const nilred_algebra* find_algebra(const ParsedFile& file, const std::string& name) {
  for (size_t i = 0; i < file.count; ++i)
    if (name == nilred_algebra_name(file.algebras[i])) return file.algebras[i];
  return nullptr;
}

std::string available_names(const ParsedFile& file) {
  std::string names;
  for (size_t i = 0; i < file.count; ++i) {
    if (!names.empty()) names += ", ";
    names += nilred_algebra_name(file.algebras[i]);
  }
  return names.empty() ? "(none)" : names;
}

int print_and_free(char* text) {
  if (text) {
    std::cout << text;
    nilred_string_free(text);
  }
  return 0;
}

struct CommonFlags {
  std::string mode = "exact";
  double tol = 1e-9;
  bool json = false;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--mode", flags.mode, "Arithmetic mode")
      ->check(CLI::IsMember({"exact", "float"}))
      ->capture_default_str();
  cmd->add_option("--tol", flags.tol, "Zero threshold (float mode)")
      ->capture_default_str();
  cmd->add_flag("--json", flags.json, "Emit the machine-readable JSON report");
}

int apply_common(nilred_session* session, const CommonFlags& flags) {
  nilred_status st = nilred_session_set_mode(
      session, flags.mode == "float" ? NILRED_MODE_FLOAT : NILRED_MODE_EXACT);
  if (st != NILRED_OK) return fail(session, st);
  st = nilred_session_set_tolerance(session, flags.tol);
  if (st != NILRED_OK) return fail(session, st);
  return 0;
}

int parse_file(nilred_session* session, const std::string& path, ParsedFile& file) {
  std::string text;
  if (!read_input(path, text)) {
    std::cerr << "error: cannot read '" << path << "'\n";
    return static_cast<int>(NILRED_ERR_INTERNAL);
  }
  file.session = session;
  nilred_status st = nilred_parse(session, text.c_str(), &file.algebras, &file.count);
  if (st != NILRED_OK) return fail(session, st);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nilred: classifier for 2-step nilpotent metric Lie algebras"};
  app.set_version_flag("--version", nilred_version());
  app.require_subcommand(1);

  std::string classify_path, compare_path, export_path;
  std::vector<std::string> selected;
  std::string left_name, right_name;
  bool classify_core = false;
  CommonFlags classify_flags, compare_flags, export_flags, selftest_flags;

  CLI::App* classify = app.add_subcommand(
      "classify", "Analyze each algebra in a spec file ('-' reads stdin)");
  classify->add_option("file", classify_path, "Algebra spec file")->required();
  classify->add_option("--algebra", selected, "Restrict to the named algebras");
  classify->add_flag("--classify-core", classify_core,
                     "Also classify the reduced core after splitting a Euclidean factor");
  add_common(classify, classify_flags);

  CLI::App* compare = app.add_subcommand(
      "compare", "Pair report for exactly two algebras from a spec file");
  compare->add_option("file", compare_path, "Algebra spec file")->required();
  compare->add_option("--left", left_name, "Name of the left algebra");
  compare->add_option("--right", right_name, "Name of the right algebra");
  add_common(compare, compare_flags);

  CLI::App* exportc = app.add_subcommand(
      "export", "Emit canonical raw spec (or JSON) for each algebra");
  exportc->add_option("file", export_path, "Algebra spec file")->required();
  exportc->add_option("--algebra", selected, "Restrict to the named algebras");
  add_common(exportc, export_flags);

  CLI::App* selftest = app.add_subcommand("selftest", "Run the built-in verification suite");
  selftest->add_flag("--json", selftest_flags.json, "Emit the machine-readable JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(NILRED_ERR_PARSE);
  }

  SessionPtr session(nilred_session_new());
  if (!session) {
    std::cerr << "error: cannot create session\n";
    return static_cast<int>(NILRED_ERR_INTERNAL);
  }

  auto select = [&](const ParsedFile& file, std::vector<const nilred_algebra*>& out) -> int {
    if (selected.empty()) {
      for (size_t i = 0; i < file.count; ++i) out.push_back(file.algebras[i]);
      return 0;
    }
    for (const auto& name : selected) {
      const nilred_algebra* a = find_algebra(file, name);
      if (!a) {
        std::cerr << "error: no algebra named '" << name
                  << "' (available: " << available_names(file) << ")\n";
        return static_cast<int>(NILRED_ERR_VALIDATION);
      }
      out.push_back(a);
    }
    return 0;
  };

  if (*classify) {
    if (int rc = apply_common(session.get(), classify_flags)) return rc;
    nilred_session_set_classify_core(session.get(), classify_core ? 1 : 0);
    ParsedFile file;
    if (int rc = parse_file(session.get(), classify_path, file)) return rc;
    std::vector<const nilred_algebra*> algebras;
    if (int rc = select(file, algebras)) return rc;
    char* out = nullptr;
    nilred_status st = nilred_classify_many(
        session.get(), algebras.data(), algebras.size(),
        classify_flags.json ? NILRED_FORMAT_JSON : NILRED_FORMAT_TEXT, &out);
    if (st != NILRED_OK) return fail(session.get(), st);
    return print_and_free(out);
  }

  if (*compare) {
    if (int rc = apply_common(session.get(), compare_flags)) return rc;
    ParsedFile file;
    if (int rc = parse_file(session.get(), compare_path, file)) return rc;
    const nilred_algebra *left = nullptr, *right = nullptr;
    if (left_name.empty() && right_name.empty()) {
      if (file.count != 2) {
        std::cerr << "error: compare needs exactly two algebras (found " << file.count
                  << "); use --left/--right to pick two\n";
        return static_cast<int>(NILRED_ERR_VALIDATION);
      }
      left = file.algebras[0];
      right = file.algebras[1];
    } else {
      left = find_algebra(file, left_name);
      right = find_algebra(file, right_name);
      if (!left || !right) {
        std::cerr << "error: --left/--right must name algebras from the file (available: "
                  << available_names(file) << ")\n";
        return static_cast<int>(NILRED_ERR_VALIDATION);
      }
    }
    char* out = nullptr;
    nilred_status st = nilred_compare(
        session.get(), left, right,
        compare_flags.json ? NILRED_FORMAT_JSON : NILRED_FORMAT_TEXT, &out);
    if (st != NILRED_OK) return fail(session.get(), st);
    return print_and_free(out);
  }

  if (*exportc) {
    if (int rc = apply_common(session.get(), export_flags)) return rc;
    ParsedFile file;
    if (int rc = parse_file(session.get(), export_path, file)) return rc;
    std::vector<const nilred_algebra*> algebras;
    if (int rc = select(file, algebras)) return rc;
    char* out = nullptr;
    nilred_status st = nilred_export_many(
        session.get(), algebras.data(), algebras.size(),
        export_flags.json ? NILRED_FORMAT_JSON : NILRED_FORMAT_TEXT, &out);
    if (st != NILRED_OK) return fail(session.get(), st);
    return print_and_free(out);
  }

  if (*selftest) {
    char* out = nullptr;
    nilred_status st = nilred_selftest(
        session.get(), selftest_flags.json ? NILRED_FORMAT_JSON : NILRED_FORMAT_TEXT, &out);
    print_and_free(out);
    if (st != NILRED_OK) {
      std::cerr << "error: " << nilred_session_last_error(session.get()) << "\n";
      return static_cast<int>(st);
    }
    return 0;
  }

  return static_cast<int>(NILRED_ERR_INTERNAL);
}
