"""报告存档（SQLite）"""
from src.models.database import Database, init_db
from src.models.schemas import InputEcho, ModularityOut, ReportDoc


def _report(command="dims", verdict=None):
    report = ReportDoc(
        command=command,
        input=InputEcho(name="demo", orders=[3], conductor=6, exponents=[[4]], session_conductor=3),
        hilbert_series=[1, 1, 1],
        total_dim=3,
        finite="yes",
    )
    if verdict:
        report.modularity = ModularityOut(verdict=verdict, b_nondegenerate=True)
    return report


def test_save_and_get(tmp_path):
    db = init_db(str(tmp_path / "r.db"))
    record_id = db.save_report(_report(), "taft-3")
    loaded = db.get_report(record_id)
    assert loaded == _report()


def test_list_newest_first(tmp_path):
    db = Database(str(tmp_path / "r.db"))
    db.save_report(_report(), "a")
    db.save_report(_report("modularity", "yes"), "b", exit_code=2)
    records = db.list_reports()
    assert [r.source for r in records] == ["b", "a"]
    assert records[0].verdict == "yes"
    assert records[0].exit_code == 2
    assert records[0].conductor == 3
    assert len(db.list_reports(limit=1)) == 1


def test_missing(tmp_path):
    assert Database(str(tmp_path / "r.db")).get_report(5) is None


def test_reopen_keeps_rows(tmp_path):
    path = str(tmp_path / "r.db")
    Database(path).save_report(_report(), "a")
    assert len(Database(path).list_reports()) == 1
