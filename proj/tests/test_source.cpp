#include <doctest.h>

#include "truthdiscover/source.hpp"

using namespace truthdiscover;

TEST_CASE("host policy") {
    CHECK(extract_source("http://dbpedia.org/resource/X", SourcePolicy::Host).str() == "dbpedia.org");
    CHECK(extract_source("http://User@Data.Example.COM:8080/x", SourcePolicy::Host).str() == "data.example.com");
    CHECK(extract_source("https://example.org./x", SourcePolicy::Host).str() == "example.org");
    CHECK_THROWS_AS(extract_source("urn:isbn:123", SourcePolicy::Host), NoAuthority);
    CHECK_FALSE(try_extract_source("urn:isbn:123", SourcePolicy::Host));
}

TEST_CASE("pay-level domain policy") {
    CHECK(pay_level_domain("rdf.freebase.com") == "freebase.com");
    CHECK(pay_level_domain("www.bbc.co.uk") == "bbc.co.uk");
    CHECK(pay_level_domain("localhost") == "localhost");
    CHECK(extract_source("http://de.dbpedia.org/resource/X", SourcePolicy::PayLevelDomain).str() == "dbpedia.org");
}

TEST_CASE("named graph policy") {
    SourceResolver r(SourcePolicy::NamedGraph);
    RdfStatement a{"http://x.org/a", "http://p", Term::literal("1"), std::string("http://g2"), 1};
    RdfStatement b{"http://x.org/a", "http://p", Term::literal("2"), std::string("http://g1"), 2};
    RdfStatement c{"http://x.org/c", "http://p", Term::literal("3"), std::nullopt, 3};
    r.observe(a);
    r.observe(b);
    r.observe(c);
    CHECK(r.statement_source(a)->str() == "http://g2");
    CHECK(r.vertex_source("http://x.org/a")->str() == "http://g1");
    CHECK_FALSE(r.vertex_source("http://x.org/c"));
    CHECK_FALSE(r.statement_source(c));
}

TEST_CASE("policy names parse") {
    CHECK(parse_source_policy("host") == SourcePolicy::Host);
    CHECK(parse_source_policy("pld") == SourcePolicy::PayLevelDomain);
    CHECK(parse_source_policy("graph") == SourcePolicy::NamedGraph);
    CHECK_FALSE(parse_source_policy("domain"));
}
