import math

from fastapi.testclient import TestClient

from main import app
from src import routes
from src.classical import cl_meet_total
from src.constant import VERSION
from tests.base import Base


class TestApi(Base):

    @classmethod
    def setUpClass(cls):
        cls.client = TestClient(app)

    def test_health(self):
        response = self.client.get("/health")
        self.assertEqual(response.status_code, 200)
        self.assertEqual(response.json(), {"status": True, "version": VERSION})

    def test_walk_distribution_one_step(self):
        response = self.client.post("/walk/distribution", json={"steps": 1, "coin": "S"})
        self.assertEqual(response.status_code, 200)
        body = response.json()
        self.assertEqual(body["positions"], [-1, 0, 1])
        self.assertArrayClose(body["probabilities"], [0.5, 0.0, 0.5])
        self.assertAlmostEqual(body["mean"], 0.0, delta=1e-15)
        self.assertAlmostEqual(body["stddev"], 1.0, delta=1e-12)

    def test_walk_distribution_bias(self):
        body = self.client.post("/walk/distribution", json={"steps": 3, "coin": "R", "origin": 5}).json()
        self.assertEqual(body["positions"], list(range(2, 9)))
        self.assertArrayClose(body["probabilities"], [1 / 8, 0, 1 / 8, 0, 5 / 8, 0, 1 / 8])
        self.assertGreater(body["mean"], 5)

    def test_walk_validation(self):
        self.assertEqual(self.client.post("/walk/distribution", json={"steps": -1}).status_code, 422)
        self.assertEqual(self.client.post("/walk/distribution", json={"steps": 2, "coin": "X"}).status_code, 422)

    def test_step_limit(self):
        response = self.client.post("/walk/distribution", json={"steps": routes.API_MAX_STEPS + 1})
        self.assertEqual(response.status_code, 413)
        self.assertEqual(response.json()["error"], "ResourceLimitError")

    def test_meeting_series(self):
        body = self.client.post("/meeting/series", json={"kind": "classical", "d": 2, "steps": 10}).json()
        self.assertEqual(body["t"], list(range(1, 11)))
        self.assertArrayClose(body["meeting"], [cl_meet_total(t, 2) for t in range(1, 11)])
        self.assertEqual(body["metadata"]["kind"], "classical")

    def test_meeting_series_fermion_identical(self):
        body = self.client.post(
            "/meeting/series", json={"kind": "fermion", "d": 0, "steps": 8, "start": "S"}
        ).json()
        self.assertEqual(body["meeting"], [0.0] * 8)

    def test_meeting_series_validation(self):
        response = self.client.post("/meeting/series", json={"kind": "XY", "d": 1, "steps": 5})
        self.assertEqual(response.status_code, 422)

    def test_estimate_at_peak(self):
        d = 10
        body = self.client.post("/meeting/estimate", json={"kind": "S", "t": math.sqrt(2) * d, "d": d}).json()
        self.assertRelClose(body["elliptic"]["value"], 2 / (math.pi * d), 1e-9)
        self.assertRelClose(body["quadrature"], body["elliptic"]["value"], 1e-6)
        self.assertTrue(body["elliptic"]["printed_agrees"])
        self.assertAlmostEqual(body["k_exact"], math.pi / 2, delta=1e-9)

    def test_estimate_before_overlap(self):
        response = self.client.post("/meeting/estimate", json={"kind": "RL", "t": 5.0, "d": 10})
        self.assertEqual(response.status_code, 422)
        self.assertEqual(response.json()["error"], "DomainError")

    def test_classical(self):
        body = self.client.post("/classical/meeting", json={"t": 1, "d": 0}).json()
        self.assertEqual(body["exact"], 0.5)
        self.assertAlmostEqual(body["overall"], 0.5, delta=1e-15)
        self.assertAlmostEqual(body["gaussian"], 1 / math.sqrt(math.pi), delta=1e-15)

    def test_classical_zero_steps(self):
        body = self.client.post("/classical/meeting", json={"t": 0, "d": 0}).json()
        self.assertEqual(body["exact"], 1.0)
        self.assertIsNone(body["gaussian"])
        self.assertEqual(body["overall"], 0.0)
