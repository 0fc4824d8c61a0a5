#!/usr/bin/env python3
"""Generate the bundled mini-corpus (crates/core/data/corpus/mini.jsonl).

Fifty exam-style records: a reading passage assembled from a fixed bank of
Turkish sentences, a question and four choices. Deterministic for a given seed.
No apostrophes are used so that the whitespace/punctuation pre-tokenizer and
the GPT-2 style regex agree on every piece.
"""
import json
import random
import sys

SENTENCES = [
    "Çocuklar bahçede oynayacak ve bahçede gülecek.",
    "Öğretmen sınıfta yeni bir konu anlatıyor.",
    "Öğrenciler sınavdan önce kitaplarını okudu.",
    "Bu şehirde büyük bir hastane var.",
    "Karaciğer vücudun en büyük organlarından biridir.",
    "Kalp kanı bütün vücuda pompalar.",
    "Akciğerler havayı temizler ve kana oksijen verir.",
    "Böbrekler kanı süzer ve vücuttaki suyu dengeler.",
    "Dalak kan hücrelerini yenileyen bir organdır.",
    "Doktor hastaya yeni bir ilaç verdi.",
    "Devlet halkın sağlığını korumak için kurallar koyar.",
    "Meclis yeni kanunları tartıştı ve kabul etti.",
    "Cumhuriyet döneminde eğitim sistemi değişti.",
    "Osmanlı padişahları büyük bir toprak parçasını yönetti.",
    "Tarih dersinde savaş ve barış dönemleri incelenir.",
    "Toplumun gelenekleri kültürün önemli bir parçasıdır.",
    "Dil insanların düşüncelerini ifade etmesini sağlar.",
    "Bu paragrafta yazarın asıl fikri nedir?",
    "Şiir ve roman edebiyatın iki büyük türüdür.",
    "Yazar romanında köy hayatını anlatıyor.",
    "Kelimeler cümlede farklı anlamlar kazanabilir.",
    "Matematik dersinde sayıların özelliklerini öğrendik.",
    "Fizik kuvvet ve hareket arasındaki ilişkiyi inceler.",
    "Kimya maddelerin yapısını ve değişimini araştırır.",
    "Biyoloji canlıların yaşamını konu alan bir bilimdir.",
    "Bitkiler güneş ışığını kullanarak besin üretir.",
    "Hücre canlıların en küçük yapı birimidir.",
    "Atomlar bir araya gelerek molekülleri oluşturur.",
    "Coğrafya dünyanın fiziki ve beşeri özelliklerini inceler.",
    "Dağlarda kar kışın daha uzun süre kalır.",
    "Deniz kenarındaki köylerde balıkçılık yaygındır.",
    "Yağmur yağınca toprak ıslanır ve bitkiler büyür.",
    "Ormanlar havayı temizler ve hayvanlara yuva olur.",
    "Nehirler dağlardan denize doğru akar.",
    "Ekonomi üretim ve tüketim arasındaki dengeyi inceler.",
    "Pazarda meyve ve sebze fiyatları arttı.",
    "Tarım ülkenin ekonomisi için çok önemlidir.",
    "Sanayi bölgelerinde enerji ihtiyacı yüksektir.",
    "Ticaret şehirler arasındaki yolları geliştirdi.",
    "Çiftçiler tohumları ilkbaharda toprağa eker.",
    "Annem bize sıcak bir yemek hazırladı.",
    "Babam her sabah gazete okur.",
    "Kardeşim okula yeni bir çanta ile gitti.",
    "Arkadaşlarımızla parkta top oynadık.",
    "Kedi bahçedeki ağacın altında uyuyor.",
    "Köpek kapının önünde sahibini bekliyor.",
    "Kuşlar ağaçların dallarında şarkı söylüyor.",
    "Tren istasyondan tam zamanında hareket etti.",
    "Uçak bulutların üstünde hızla uçuyor.",
    "Gemi limandan ayrılarak denize açıldı.",
    "Bilgisayar ve telefon günlük hayatın parçası oldu.",
    "Müzik insanların duygularını etkileyen bir sanattır.",
    "Resim dersinde renklerin karışımını öğrendik.",
    "Spor yapmak sağlıklı bir yaşam için gereklidir.",
    "Takım maçı son dakikada kazandı.",
    "Felsefe bilginin kaynağını ve sınırlarını sorgular.",
    "Bilim insanları yeni yöntemler geliştiriyor.",
    "Bu sorunun çözümü için farklı yollar denendi.",
    "Sonuç olarak araştırmanın amacı gerçekleşti.",
    "Her olayın bir nedeni ve bir sonucu vardır.",
    "Vatandaşlar seçimde oy kullanarak görevlerini yaptı.",
    "Hukuk kuralları toplumun düzenini korur.",
    "İnsan hakları bütün insanlar için geçerlidir.",
    "Nüfus büyük şehirlerde hızla artıyor.",
    "Göç eden aileler yeni bir hayata başladı.",
    "Kütüphanede sessizce ders çalışıyoruz.",
    "Öğrenciler soruları dikkatle okumalıdır.",
    "Aşağıdakilerden hangisi bu metnin konusudur?",
    "Güneş sistemindeki gezegenler güneşin etrafında döner.",
    "Yıldızlar geceleri gökyüzünde parlar.",
    "Ateş eski çağlarda insanların hayatını değiştirdi.",
    "İstanbul tarihi yapıları ile ünlü bir şehirdir.",
    "Ankara Türkiye Cumhuriyetinin başkentidir.",
    "Yazın hava sıcak, kışın ise soğuk olur.",
    "Zor sorular bazen kolay görünür.",
    "Yeni kitaplar eski kitaplardan daha pahalıdır.",
    "Güzel bir gün geçirdik ve eve döndük.",
    "Çocuklar bahçede oynarken annesi pencereden baktı.",
    "Evlerimizden uzakta yeni bir okul açıldı.",
    "Bu kelimenin kökü ve ekleri nelerdir?",
    "1923 yılında yeni bir dönem başladı.",
    "Sınavda 40 soru ve 4 seçenek vardı.",
]

QUESTIONS = [
    ("Hangi organ karaciğerin görevini destekler?", ["Kalp", "Akciğer", "Böbrek", "Dalak"]),
    ("Bu metnin ana fikri aşağıdakilerden hangisidir?",
     ["Eğitim önemlidir", "Doğa korunmalıdır", "Bilim gelişir", "Sanat değerlidir"]),
    ("Metne göre aşağıdakilerden hangisi doğrudur?",
     ["Yazar köyde yaşar", "Şehir büyüktür", "Hava soğuktur", "Deniz uzaktır"]),
    ("Aşağıdaki cümlelerin hangisinde bir yazım yanlışı vardır?",
     ["Birinci cümle", "İkinci cümle", "Üçüncü cümle", "Dördüncü cümle"]),
    ("Bu paragrafta hangi konudan söz edilmektedir?",
     ["Tarih", "Coğrafya", "Biyoloji", "Ekonomi"]),
    ("Hangi kelime bir fiil kökü içerir?", ["oynayacak", "bahçe", "güzel", "ve"]),
    ("Hangisi çoğul bir isimdir?", ["evler", "ev", "bahçe", "gül"]),
]


def main() -> int:
    seed = int(sys.argv[1]) if len(sys.argv) > 1 else 2025
    out = sys.argv[2] if len(sys.argv) > 2 else "crates/core/data/corpus/mini.jsonl"
    rng = random.Random(seed)
    subjects = ["biyoloji", "tarih", "edebiyat", "coğrafya", "fizik", "ekonomi", "hukuk"]
    lines = []
    for i in range(50):
        if i == 0:
            question, choices = QUESTIONS[0]
            passage = []
        else:
            question, choices = QUESTIONS[rng.randrange(len(QUESTIONS))]
            passage = [rng.choice(SENTENCES) for _ in range(rng.randint(36, 46))]
        text = " ".join(passage + [question]) if passage else question
        rec = {"id": f"q{i + 1}", "question": text, "choices": choices,
               "subject": subjects[i % len(subjects)]}
        lines.append(json.dumps(rec, ensure_ascii=False))
    with open(out, "w", encoding="utf-8") as f:
        f.write("\n".join(lines) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
