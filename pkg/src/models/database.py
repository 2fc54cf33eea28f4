"""
数据库模块 - SQLite 本地存储运行报告
"""
import os
from typing import List, Optional

from loguru import logger
from sqlalchemy import Column, DateTime, Integer, String, Text, create_engine, inspect
from sqlalchemy.orm import Session, declarative_base, sessionmaker

from src.utils.datetime_helper import now
from .schemas import ReportDoc, ReportRecord

# 数据库文件路径
DB_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.dirname(__file__))), 'data')
DB_PATH = os.getenv('NICHOLS_DB', os.path.join(DB_DIR, 'reports.db'))

Base = declarative_base()


# ==================== 数据库表定义 ====================

class ReportTable(Base):
    """运行报告表"""
    __tablename__ = 'reports'

    id = Column(Integer, primary_key=True, autoincrement=True)
    created_at = Column(DateTime, default=now)
    command = Column(String(32), nullable=False)
    source = Column(String(200), default='')  # 预设名或输入文件
    conductor = Column(Integer, nullable=False)  # 会话导子
    total_dim = Column(Integer, nullable=True)
    verdict = Column(String(20), nullable=True)  # 模性判定
    exit_code = Column(Integer, default=0)
    report_json = Column(Text, nullable=False)


# ==================== 数据库操作类 ====================

class Database:
    """数据库操作类"""

    def __init__(self, db_path: str | None = None) -> None:
        self.db_path = db_path or DB_PATH
        os.makedirs(os.path.dirname(os.path.abspath(self.db_path)), exist_ok=True)

        self.engine = create_engine(f'sqlite:///{self.db_path}', echo=False)
        self.SessionLocal = sessionmaker(bind=self.engine)

        self._create_tables()

    def _create_tables(self) -> None:
        """创建所有必要的表"""
        existing_tables = inspect(self.engine).get_table_names()
        Base.metadata.create_all(self.engine)
        if 'reports' not in existing_tables:
            logger.info(f"已创建报告表: {self.db_path}")

    def get_session(self) -> Session:
        """获取数据库会话"""
        return self.SessionLocal()

    # ========== 报告操作 ==========

    def save_report(self, report: ReportDoc, source: str, exit_code: int = 0) -> int:
        """
        保存一次运行报告

        Returns:
            新记录 ID
        """
        with self.get_session() as session:
            row = ReportTable(
                command=report.command,
                source=source,
                conductor=report.input.session_conductor,
                total_dim=report.total_dim,
                verdict=report.modularity.verdict if report.modularity else None,
                exit_code=exit_code,
                report_json=report.model_dump_json(),
            )
            session.add(row)
            session.commit()
            logger.debug(f"报告已存档: #{row.id} {report.command} {source}")
            return row.id

    def list_reports(self, limit: int = 20) -> List[ReportRecord]:
        """最近的运行记录（新的在前）"""
        with self.get_session() as session:
            rows = session.query(ReportTable).order_by(ReportTable.id.desc()).limit(limit).all()
            return [
                ReportRecord(
                    id=row.id,
                    created_at=row.created_at,
                    command=row.command,
                    source=row.source or '',
                    conductor=row.conductor,
                    total_dim=row.total_dim,
                    verdict=row.verdict,
                    exit_code=row.exit_code or 0,
                )
                for row in rows
            ]

    def get_report(self, report_id: int) -> Optional[ReportDoc]:
        """按 ID 取回完整报告"""
        with self.get_session() as session:
            row = session.get(ReportTable, report_id)
            if row is None:
                return None
            return ReportDoc.model_validate_json(row.report_json)


def init_db(db_path: str | None = None) -> Database:
    """初始化数据库"""
    return Database(db_path)
