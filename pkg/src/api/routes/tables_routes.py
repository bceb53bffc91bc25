from fastapi import APIRouter

from src.experiments.tables import render_tables, reproduce_tables

router = APIRouter()


@router.get("")
def get_tables():
    """
    Reproduce the published tables and return every verdict
    """
    report = reproduce_tables()
    return {
        "all_passed": report.all_passed,
        "exit_code": report.exit_code,
        "report": report.model_dump(mode="json"),
        "text": render_tables(report),
    }
