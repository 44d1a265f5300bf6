import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pareto_mall.ingest import (
    CSV_COLUMNS,
    CsvSchemaError,
    Dataset,
    EmptyDatasetError,
    FacilityLengthError,
    RowValidationError,
    UnknownCategoryError,
    facility_totals,
    generate_synthetic_dataset,
    parse_mall_csv,
    serialize_mall_csv,
    validate_mall_csv,
)
from pareto_mall.model import FACILITY_CATEGORIES

HEADER = ",".join(CSV_COLUMNS)
S1_ROW = 'S1,OH1,41.502744,-81.502225,16,1042,0,71943,211813,"[3,3,1,0,0,0,0,0,0,0,0,0,0,0,0]",0.50'


def csv_text(*rows):
    return "\n".join([HEADER, *rows]) + "\n"


class TestFacilityTotals:
    def test_all_absent(self):
        assert facility_totals({}) == (0,) * 15

    def test_reference_prefix(self):
        # The worked example: per-category sums landing in canonical order.
        report = {
            "Anchor": [3],
            "Services": [3],
            "Miscellaneous": [1],
            "Hi-Tech": [2],
            "Restaurants": [6],
            "Specialty": [0],
            "Barbers and Beauty": [7],
        }
        totals = facility_totals(report)
        assert totals[:7] == (3, 3, 1, 2, 6, 0, 7)
        assert totals[7:] == (0,) * 8

    def test_multiple_counts_summed(self):
        totals = facility_totals({"Anchor": [1, 2, 1]})
        assert totals[0] == 4
        assert totals[1:] == (0,) * 14

    def test_unknown_category(self):
        with pytest.raises(UnknownCategoryError):
            facility_totals({"Pet Stores": [1]})

    def test_negative_count(self):
        with pytest.raises(ValueError):
            facility_totals({"Anchor": [-1]})

    @given(
        st.dictionaries(
            st.sampled_from(FACILITY_CATEGORIES),
            st.lists(st.integers(min_value=0, max_value=50), max_size=5),
            max_size=15,
        )
    )
    def test_matches_naive_per_category_sum(self, report):
        totals = facility_totals(report)
        assert len(totals) == 15
        for i, category in enumerate(FACILITY_CATEGORIES):
            expected = 0
            for count in report.get(category, []):
                expected += count
            assert totals[i] == expected


class TestParseMallCsv:
    def test_reference_row(self):
        dataset = parse_mall_csv(csv_text(S1_ROW))
        record = dataset.by_code("OH1")
        assert record.name == "S1"
        assert record.store_number == 16
        assert record.parking_space == 1042
        assert record.food_court is False
        assert record.avg_household_income == 71943
        assert record.population == 211813
        assert record.facilities[:3] == (3, 3, 1)
        assert record.probability == 0.50

    def test_table2_fixture_loads(self, table2_dataset):
        assert len(table2_dataset) == 5
        assert [r.code for r in table2_dataset.records] == ["OH1", "OH2", "OH3", "OH4", "OH5"]

    def test_facility_length_error(self):
        bad = S1_ROW.replace('"[3,3,1,0,0,0,0,0,0,0,0,0,0,0,0]"', '"[3,3]"')
        with pytest.raises(FacilityLengthError) as exc:
            parse_mall_csv(csv_text(bad))
        assert exc.value.row == 2

    def test_duplicate_code(self):
        with pytest.raises(RowValidationError, match="duplicate code"):
            parse_mall_csv(csv_text(S1_ROW, S1_ROW))

    def test_thousands_separator_rejected(self):
        bad = S1_ROW.replace("71943", '"71,943"')
        with pytest.raises(RowValidationError, match="AvgHouseholdIncome"):
            parse_mall_csv(csv_text(bad))

    def test_header_mismatch(self):
        text = "Mall,Code\nS1,OH1\n"
        with pytest.raises(CsvSchemaError) as exc:
            parse_mall_csv(text)
        assert exc.value.row == 1

    def test_short_row(self):
        with pytest.raises(CsvSchemaError) as exc:
            parse_mall_csv(csv_text("S1,OH1,41.5"))
        assert exc.value.row == 2

    def test_latitude_out_of_range(self):
        bad = S1_ROW.replace("41.502744", "98.0")
        with pytest.raises(RowValidationError, match="Lat"):
            parse_mall_csv(csv_text(bad))

    def test_probability_out_of_range(self):
        bad = S1_ROW.replace(",0.50", ",1.75")
        with pytest.raises(RowValidationError):
            parse_mall_csv(csv_text(bad))

    def test_food_court_must_be_binary(self):
        bad = S1_ROW.replace(",16,1042,0,", ",16,1042,2,")
        with pytest.raises(RowValidationError, match="FoodCourt"):
            parse_mall_csv(csv_text(bad))

    def test_empty_file(self):
        with pytest.raises(EmptyDatasetError):
            parse_mall_csv("")

    def test_header_only(self):
        with pytest.raises(EmptyDatasetError):
            parse_mall_csv(HEADER + "\n")

    def test_crlf_accepted(self):
        text = csv_text(S1_ROW).replace("\n", "\r\n")
        assert len(parse_mall_csv(text)) == 1


class TestValidate:
    def test_clean_file(self, table2_text):
        assert validate_mall_csv(table2_text) == []

    def test_collects_multiple_errors(self):
        bad1 = S1_ROW.replace("1042", "-7")
        bad2 = S1_ROW.replace("OH1", "OH2").replace("0.50", "3.0")
        errors = validate_mall_csv(csv_text(bad1, bad2, S1_ROW.replace("OH1", "OH2")))
        assert len(errors) == 2
        assert "row 2" in errors[0]
        assert "row 3" in errors[1]

    def test_duplicate_reported_with_row(self):
        errors = validate_mall_csv(csv_text(S1_ROW, S1_ROW))
        assert len(errors) == 1
        assert "row 3" in errors[0] and "duplicate" in errors[0]


class TestRoundTrip:
    def test_table2_round_trip(self, table2_dataset):
        text = serialize_mall_csv(table2_dataset)
        again = parse_mall_csv(text)
        assert again.records == table2_dataset.records

    @pytest.mark.parametrize("n,seed", [(1, 7), (13, 0), (90, 42)])
    def test_synthetic_round_trip(self, n, seed):
        dataset = generate_synthetic_dataset(n, seed)
        again = parse_mall_csv(serialize_mall_csv(dataset))
        assert again.records == dataset.records


class TestSyntheticGenerator:
    def test_deterministic(self):
        a = generate_synthetic_dataset(1, 7)
        b = generate_synthetic_dataset(1, 7)
        assert a.records == b.records

    def test_count_and_unique_codes(self):
        dataset = generate_synthetic_dataset(90, 42)
        assert len(dataset) == 90
        assert len({r.code for r in dataset.records}) == 90

    def test_ranges(self):
        for r in generate_synthetic_dataset(200, 3).records:
            assert 40.8 <= r.location.lat <= 41.8
            assert -82.2 <= r.location.lng <= -81.0
            assert 5 <= r.store_number <= 60
            assert 0 <= r.parking_space <= 3000
            assert 40000 <= r.avg_household_income <= 120000
            assert 20000 <= r.population <= 500000
            assert 0.0 <= r.probability <= 1.0

    def test_zero_records_rejected(self):
        with pytest.raises(ValueError):
            generate_synthetic_dataset(0, 1)

    def test_different_seeds_differ(self):
        assert generate_synthetic_dataset(5, 1).records != generate_synthetic_dataset(5, 2).records


class TestDataset:
    def test_duplicate_codes_rejected(self, table2_dataset):
        records = table2_dataset.records + (table2_dataset.records[0],)
        with pytest.raises(ValueError, match="duplicate"):
            Dataset(records=records)

    def test_empty_rejected(self):
        with pytest.raises(EmptyDatasetError):
            Dataset(records=())

    def test_by_code_missing(self, table2_dataset):
        with pytest.raises(KeyError):
            table2_dataset.by_code("OH99")
