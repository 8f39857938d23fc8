"""Report how many (template, p) pairs and distinct shadings the generated table holds."""
from meshpat.catalog import table8_counts, table8_rows

if __name__ == "__main__":
    for row in table8_rows():
        print(f"{'/'.join(t.value for t in row.templates)}: {len(row.p_list)} patterns p")
    c = table8_counts()
    print(f"{c['pairs']} (template, p) pairs, {c['distinct_shadings']} distinct shadings")
