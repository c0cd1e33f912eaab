"""
SQLite cache of oracle censuses.
"""

import json
import sqlite3
from collections.abc import Sequence
from pathlib import Path
from typing import Any, Optional

from .census import CensusRecord, CensusResult
from .config import default_home
from .constants import CACHE_FILE_NAME
from .logging_config import get_logger

logger = get_logger(__name__)


class CensusStore:
    """Stores the p = 2 isomorphism classes of each order the oracle has enumerated."""

    def __init__(self, db_path: Optional[Path] = None):
        """Initialize the census store."""
        if db_path is None:
            self.db_path = default_home() / CACHE_FILE_NAME
        else:
            self.db_path = Path(db_path)

        try:
            self.db_path.parent.mkdir(parents=True, exist_ok=True)
            logger.debug(f"Census store initialized with database: {self.db_path}")
        except OSError as e:
            logger.error(f"Failed to create database directory: {e}")
            raise

        self._init_database()

    def _init_database(self) -> None:
        """Initialize the SQLite database schema."""
        with sqlite3.connect(self.db_path) as conn:
            conn.execute(
                """
                CREATE TABLE IF NOT EXISTS census_records (
                    order_n INTEGER NOT NULL,
                    form TEXT NOT NULL,
                    graph6 TEXT NOT NULL,
                    p INTEGER NOT NULL,
                    neg INTEGER NOT NULL,
                    eta INTEGER NOT NULL,
                    connected INTEGER NOT NULL,
                    PRIMARY KEY (order_n, form)
                )
            """,
            )

            conn.execute(
                """
                CREATE TABLE IF NOT EXISTS census_runs (
                    order_n INTEGER PRIMARY KEY,
                    examined INTEGER NOT NULL,
                    labeled TEXT,
                    completed_at TIMESTAMP DEFAULT CURRENT_TIMESTAMP
                )
            """,
            )

            conn.execute(
                """
                CREATE INDEX IF NOT EXISTS idx_order
                ON census_records(order_n)
            """,
            )

            conn.execute(
                """
                CREATE INDEX IF NOT EXISTS idx_order_eta
                ON census_records(order_n, eta)
            """,
            )

            conn.commit()

    @staticmethod
    def _row_to_record(row: sqlite3.Row) -> CensusRecord:
        return CensusRecord.from_dict(
            {
                "form": row["form"],
                "graph6": row["graph6"],
                "p": row["p"],
                "n": row["neg"],
                "eta": row["eta"],
                "order": row["order_n"],
                "connected": row["connected"],
            }
        )

    def save_census(
        self,
        order: int,
        records: Sequence[CensusRecord],
        examined: int,
        labeled: Optional[dict[int, int]] = None,
    ) -> bool:
        """Replace the stored census of one order."""
        try:
            with sqlite3.connect(self.db_path) as conn:
                conn.execute("DELETE FROM census_records WHERE order_n = ?", (order,))
                conn.executemany(
                    """
                    INSERT INTO census_records (
                        order_n, form, graph6, p, neg, eta, connected
                    ) VALUES (?, ?, ?, ?, ?, ?, ?)
                """,
                    [
                        (
                            order,
                            r.form.hex(),
                            r.graph6,
                            r.inertia.p,
                            r.inertia.n,
                            r.inertia.eta,
                            int(r.connected),
                        )
                        for r in records
                    ],
                )
                conn.execute(
                    """
                    INSERT OR REPLACE INTO census_runs (order_n, examined, labeled)
                    VALUES (?, ?, ?)
                """,
                    (order, examined, json.dumps(labeled) if labeled is not None else None),
                )
                conn.commit()
                logger.info(f"Stored {len(records)} census records for n={order}")
                return True
        except sqlite3.Error as e:
            logger.error(f"Failed to store census for n={order}: {e}")
            return False

    def has_census(self, order: int) -> bool:
        """Whether a complete census of this order is stored."""
        try:
            with sqlite3.connect(self.db_path) as conn:
                cursor = conn.execute("SELECT 1 FROM census_runs WHERE order_n = ?", (order,))
                return cursor.fetchone() is not None
        except sqlite3.Error as e:
            logger.error(f"Failed to query census store: {e}")
            return False

    def load_census(self, order: int) -> Optional[list[CensusRecord]]:
        """The stored census of one order, sorted by canonical form; None when absent."""
        result = self.load_result(order)
        return result.records if result is not None else None

    def load_result(self, order: int) -> Optional[CensusResult]:
        """The stored census with its run metadata; None when absent.

        Every record is recomputed from its graph6. A census with any record that does not
        match is discarded as a whole (None), so the caller enumerates it again.
        """
        try:
            with sqlite3.connect(self.db_path) as conn:
                conn.row_factory = sqlite3.Row
                run = conn.execute(
                    "SELECT examined, labeled FROM census_runs WHERE order_n = ?", (order,)
                ).fetchone()
                rows = conn.execute(
                    "SELECT * FROM census_records WHERE order_n = ?", (order,)
                ).fetchall()
        except sqlite3.Error as e:
            logger.error(f"Failed to query census store: {e}")
            return None
        if run is None:
            return None

        try:
            records = sorted((self._row_to_record(row) for row in rows), key=lambda r: r.form)
            labeled = None
            if run["labeled"]:
                labeled = {int(eta): count for eta, count in json.loads(run["labeled"]).items()}
        except ValueError as e:
            logger.error(f"Discarding stored census for n={order}: {e}")
            return None

        for record in records:
            problem = record.problem()
            if problem is not None:
                logger.error(f"Discarding stored census for n={order}: {record.graph6}: {problem}")
                return None
        return CensusResult(order, records, run["examined"], labeled)

    def list_records(
        self,
        order: int,
        eta: Optional[int] = None,
        connected: Optional[bool] = None,
    ) -> list[CensusRecord]:
        """Stored records of one order with optional filters."""
        query = "SELECT * FROM census_records WHERE order_n = ?"
        params: list[Any] = [order]

        if eta is not None:
            query += " AND eta = ?"
            params.append(eta)

        if connected is not None:
            query += " AND connected = ?"
            params.append(int(connected))

        query += " ORDER BY form"

        try:
            with sqlite3.connect(self.db_path) as conn:
                conn.row_factory = sqlite3.Row
                cursor = conn.cursor()
                cursor.execute(query, params)
                return [self._row_to_record(row) for row in cursor.fetchall()]
        except sqlite3.Error as e:
            logger.error(f"Failed to list census records: {e}")
            return []

    def remove_census(self, order: int) -> bool:
        """Drop the stored census of one order."""
        try:
            with sqlite3.connect(self.db_path) as conn:
                conn.execute("DELETE FROM census_records WHERE order_n = ?", (order,))
                conn.execute("DELETE FROM census_runs WHERE order_n = ?", (order,))
                conn.commit()
                removed = conn.total_changes > 0
                if removed:
                    logger.info(f"Removed census for n={order} from store")
                return removed
        except sqlite3.Error as e:
            logger.error(f"Failed to remove census from store: {e}")
            return False

    def get_statistics(self) -> dict[str, Any]:
        """Get statistics about stored censuses."""
        with sqlite3.connect(self.db_path) as conn:
            cursor = conn.cursor()

            cursor.execute("SELECT COUNT(*) FROM census_records")
            total = cursor.fetchone()[0]

            cursor.execute(
                """
                SELECT order_n, examined, completed_at, labeled
                FROM census_runs
                ORDER BY order_n
            """,
            )
            runs = cursor.fetchall()

            cursor.execute(
                """
                SELECT order_n, eta, COUNT(*)
                FROM census_records
                GROUP BY order_n, eta
                ORDER BY order_n, eta
            """,
            )
            by_eta: dict[int, dict[int, int]] = {}
            for order, eta, count in cursor.fetchall():
                by_eta.setdefault(order, {})[eta] = count

            return {
                "total": total,
                "orders": [row[0] for row in runs],
                "runs": [
                    {
                        "order": o,
                        "examined": e,
                        "completed_at": c,
                        "labeled": json.loads(l) if l else None,
                    }
                    for o, e, c, l in runs
                ],
                "by_eta": by_eta,
            }

    def export_records(self, output_path: Path) -> bool:
        """Export every stored census to a JSON file."""
        try:
            stats = self.get_statistics()
            payload = {
                "runs": [
                    {"order": r["order"], "examined": r["examined"], "labeled": r["labeled"]}
                    for r in stats["runs"]
                ],
                "records": [
                    record.to_dict()
                    for order in stats["orders"]
                    for record in self.list_records(order)
                ],
            }
            with open(output_path, "w") as f:
                json.dump(payload, f, indent=2)
            logger.info(f"Exported {len(payload['records'])} census records to {output_path}")
            return True
        except (OSError, TypeError, sqlite3.Error) as e:
            logger.error(f"Failed to export census records: {e}")
            return False

    def import_records(self, input_path: Path) -> int:
        """Import censuses from a JSON file written by export_records.

        An order with any record that does not match its graph6 is skipped.
        """
        try:
            with open(input_path) as f:
                payload = json.load(f)

            by_order: dict[int, list[CensusRecord]] = {}
            rejected: set[int] = set()
            for data in payload["records"]:
                record = CensusRecord.from_dict(data)
                problem = record.problem()
                if problem is not None:
                    logger.error(f"Rejecting imported record {record.graph6}: {problem}")
                    rejected.add(record.order)
                by_order.setdefault(record.order, []).append(record)

            imported = 0
            for run in payload["runs"]:
                order = run["order"]
                if order in rejected:
                    logger.error(f"Skipping imported census for n={order}")
                    continue
                records = by_order.get(order, [])
                labeled = run.get("labeled")
                if labeled is not None:
                    labeled = {int(eta): count for eta, count in labeled.items()}
                if self.save_census(order, records, run["examined"], labeled):
                    imported += len(records)

            logger.info(f"Imported {imported} census records from {input_path}")
            return imported
        except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as e:
            logger.error(f"Failed to import census records: {e}")
            return 0
