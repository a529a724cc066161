#include "doctest.h"

#include "authorlink/error.h"
#include "authorlink/name.h"
#include "authorlink/unicode.h"

namespace authorlink {
namespace {

using Tokens = std::vector<std::string>;

TEST_CASE("normalize splits periods, hyphens and whitespace") {
  CHECK(NormalizeName("J. Lee").tokens == Tokens{"J", "Lee"});
  CHECK(NormalizeName("J.Lee").tokens == Tokens{"J", "Lee"});
  CHECK(NormalizeName("Lei  Wang ").tokens == Tokens{"Lei", "Wang"});
  CHECK(NormalizeName("Jang-Myung Lee").tokens == Tokens{"Jang", "Myung", "Lee"});
  CHECK(NormalizeName("Bing Li 0002").tokens == Tokens{"Bing", "Li"});
}

TEST_CASE("normalize composes to NFC") {
  // "e" + combining acute vs precomposed U+00E9.
  CHECK(NormalizeName("Jose\xCC\x81 Garcia").Render() == "Jos\xC3\xA9 Garcia");
  CHECK(NameKey("JOS\xC3\x89 GARCIA") == NameKey("jos\xC3\xA9 garcia"));
}

TEST_CASE("normalize rejects names with nothing left") {
  CHECK_THROWS_AS(NormalizeName(""), InvalidArgument);
  CHECK_THROWS_AS(NormalizeName(" . - "), InvalidArgument);
}

TEST_CASE("atomic variates") {
  CHECK(AtomicVariateOf(NormalizeName("Lei Wang")).Render() == "L Wang");
  CHECK(AtomicVariateOf(NormalizeName("R Deriche")).Render() == "R Deriche");
  CHECK(AtomicVariateOf(NormalizeName("Madonna")).Render() == "M Madonna");
  CHECK(AtomicVariateOf(NormalizeName("lei wang")).Render() == "L wang");
  CHECK(AtomicVariateOf(NormalizeName("\xC3\xB6zlem Yilmaz")).Render() ==
        "\xC3\x96 Yilmaz");
}

TEST_CASE("name variates") {
  CHECK(NameVariates(NormalizeName("Rachid Deriche")) ==
        Tokens{"Rachid Deriche", "R Deriche"});
  CHECK(NameVariates(NormalizeName("L Wang")) == Tokens{"L Wang"});
  CHECK(NameVariates(NormalizeName("Jang Myung Lee")) ==
        Tokens{"Jang Myung Lee", "J Lee"});
}

TEST_CASE("normalization and atomic variates are idempotent") {
  for (const char *raw : {"J. Lee", "Jang-Myung  Lee", "Madonna", "R. Deriche",
                          "Hans-Peter Kriegel 0001", "S\xC3\xB8ren Olsen",
                          "A.B.C. de la Cruz"}) {
    CAPTURE(raw);
    const NormalizedName once = NormalizeName(raw);
    CHECK(NormalizeName(once.Render()) == once);
    const std::string atomic = AtomicVariateOf(once).Render();
    CHECK(AtomicVariateOf(NormalizeName(atomic)).Render() == atomic);
  }
}

TEST_CASE("first name is every token but the last") {
  CHECK(NormalizeName("Jang Myung Lee").FirstName() == "Jang Myung");
  CHECK(NormalizeName("Madonna").FirstName().empty());
}

TEST_CASE("unicode helpers") {
  CHECK(unicode::CaseFold("Stra\xC3\x9F" "e") == "strasse");
  CHECK(unicode::UpperInitial("\xC3\xA9tienne") == "\xC3\x89");
  CHECK(unicode::UpperInitial("").empty());
  CHECK(unicode::CodePoints("a\xC3\xA9" "b").size() == 3);
  CHECK(unicode::AlnumTokens("Graph-Neural  Networks, 2nd ed.") ==
        Tokens{"graph", "neural", "networks", "2nd", "ed"});
  CHECK(unicode::IsSpace(0xA0));
  CHECK_FALSE(unicode::IsSpace('x'));
  CHECK(unicode::Nfc("\xFF").find("\xEF\xBF\xBD") != std::string::npos);
}

}  // namespace
}  // namespace authorlink
