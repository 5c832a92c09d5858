#include <map>
#include <string>

namespace faqkit {

// Short, original FAQ-style passages. Enough to separate the languages most
// common in FAQ markup; production runs supply pass-through tags instead.
const std::map<std::string, std::string>& builtin_language_samples() {
  static const std::map<std::string, std::string> samples = {
      {"en",
       "How can I change my booking? You can change your booking online at any time before the day "
       "of arrival. What is the check-in time at the hotel? Check-in starts at three in the afternoon "
       "and the reception is open all night. Do you offer free parking for guests? Yes, parking is free "
       "for all guests who stay with us. Is breakfast included in the price of the room? Breakfast is "
       "included with most rates and is served every morning in the restaurant. Can I bring my dog? "
       "Small pets are welcome, but please let us know when you make the reservation. How do I get a "
       "refund for my order? If you are not happy with the product, return it within thirty days and "
       "we will refund the full amount. Where can I find the terms and conditions? They are available "
       "on our website, and you should read them before you place an order. What payment methods do "
       "you accept? We accept all major credit cards and bank transfers."},
      {"de",
       "Wie kann ich meine Buchung ändern? Sie können Ihre Buchung jederzeit vor dem Anreisetag online "
       "ändern. Wann ist der Check-in im Hotel? Der Check-in beginnt um fünfzehn Uhr und die Rezeption "
       "ist die ganze Nacht geöffnet. Gibt es kostenlose Parkplätze für Gäste? Ja, das Parken ist für "
       "alle Gäste, die bei uns übernachten, kostenlos. Ist das Frühstück im Zimmerpreis enthalten? Das "
       "Frühstück ist bei den meisten Tarifen inbegriffen und wird jeden Morgen im Restaurant serviert. "
       "Darf ich meinen Hund mitbringen? Kleine Haustiere sind willkommen, bitte teilen Sie uns das bei "
       "der Reservierung mit. Wie erhalte ich eine Rückerstattung für meine Bestellung? Wenn Sie mit dem "
       "Produkt nicht zufrieden sind, schicken Sie es innerhalb von dreißig Tagen zurück und wir "
       "erstatten den vollen Betrag. Welche Zahlungsmethoden werden akzeptiert? Wir akzeptieren alle "
       "gängigen Kreditkarten und Überweisungen."},
      {"fr",
       "Comment puis-je modifier ma réservation ? Vous pouvez modifier votre réservation en ligne à tout "
       "moment avant le jour de votre arrivée. Quelle est l'heure d'arrivée à l'hôtel ? L'enregistrement "
       "commence à quinze heures et la réception est ouverte toute la nuit. Proposez-vous un parking "
       "gratuit pour les clients ? Oui, le parking est gratuit pour tous les clients qui séjournent chez "
       "nous. Le petit-déjeuner est-il compris dans le prix de la chambre ? Le petit-déjeuner est inclus "
       "dans la plupart des tarifs et il est servi chaque matin au restaurant. Puis-je venir avec mon "
       "chien ? Les petits animaux sont les bienvenus, mais merci de nous prévenir lors de la "
       "réservation. Comment obtenir un remboursement de ma commande ? Si vous n'êtes pas satisfait du "
       "produit, renvoyez-le dans les trente jours et nous vous rembourserons le montant total. Quels "
       "moyens de paiement acceptez-vous ? Nous acceptons les principales cartes de crédit et les "
       "virements bancaires."},
      {"es",
       "¿Cómo puedo cambiar mi reserva? Puede cambiar su reserva en línea en cualquier momento antes del "
       "día de llegada. ¿A qué hora es el registro de entrada en el hotel? El registro empieza a las tres "
       "de la tarde y la recepción está abierta toda la noche. ¿Ofrecen aparcamiento gratuito para los "
       "huéspedes? Sí, el aparcamiento es gratuito para todos los huéspedes que se alojan con nosotros. "
       "¿El desayuno está incluido en el precio de la habitación? El desayuno está incluido en la mayoría "
       "de las tarifas y se sirve todas las mañanas en el restaurante. ¿Puedo traer a mi perro? Las "
       "mascotas pequeñas son bienvenidas, pero por favor avísenos cuando haga la reserva. ¿Cómo obtengo "
       "el reembolso de mi pedido? Si no está satisfecho con el producto, devuélvalo en un plazo de "
       "treinta días y le devolveremos el importe completo. ¿Qué métodos de pago aceptan? Aceptamos las "
       "principales tarjetas de crédito y las transferencias bancarias."},
      {"it",
       "Come posso modificare la mia prenotazione? Puoi modificare la tua prenotazione online in "
       "qualsiasi momento prima del giorno di arrivo. A che ora è il check-in in albergo? Il check-in "
       "inizia alle quindici e la reception è aperta tutta la notte. Offrite un parcheggio gratuito per "
       "gli ospiti? Sì, il parcheggio è gratuito per tutti gli ospiti che soggiornano da noi. La "
       "colazione è inclusa nel prezzo della camera? La colazione è inclusa nella maggior parte delle "
       "tariffe e viene servita ogni mattina nel ristorante. Posso portare il mio cane? Gli animali di "
       "piccola taglia sono i benvenuti, ma per favore avvisateci al momento della prenotazione. Come "
       "ottengo il rimborso del mio ordine? Se non sei soddisfatto del prodotto, restituiscilo entro "
       "trenta giorni e ti rimborseremo l'intero importo. Quali metodi di pagamento accettate? "
       "Accettiamo tutte le principali carte di credito e i bonifici bancari."},
      {"nl",
       "Hoe kan ik mijn boeking wijzigen? U kunt uw boeking op elk moment voor de dag van aankomst "
       "online wijzigen. Hoe laat kan ik inchecken in het hotel? Inchecken kan vanaf drie uur 's middags "
       "en de receptie is de hele nacht open. Is er gratis parkeergelegenheid voor gasten? Ja, parkeren "
       "is gratis voor alle gasten die bij ons verblijven. Is het ontbijt inbegrepen in de prijs van de "
       "kamer? Het ontbijt is bij de meeste tarieven inbegrepen en wordt elke ochtend in het restaurant "
       "geserveerd. Mag ik mijn hond meenemen? Kleine huisdieren zijn welkom, maar laat het ons weten "
       "wanneer u reserveert. Hoe krijg ik mijn geld terug voor mijn bestelling? Als u niet tevreden "
       "bent met het product, stuur het dan binnen dertig dagen terug en wij betalen het volledige bedrag "
       "terug. Welke betaalmethoden accepteren jullie? Wij accepteren alle gangbare creditcards en "
       "bankoverschrijvingen."},
      {"pt",
       "Como posso alterar a minha reserva? Pode alterar a sua reserva online a qualquer momento antes do "
       "dia da chegada. A que horas é o check-in no hotel? O check-in começa às três da tarde e a "
       "receção está aberta durante toda a noite. Oferecem estacionamento gratuito para os hóspedes? "
       "Sim, o estacionamento é gratuito para todos os hóspedes que ficam connosco. O pequeno-almoço "
       "está incluído no preço do quarto? O pequeno-almoço está incluído na maioria das tarifas e é "
       "servido todas as manhãs no restaurante. Posso levar o meu cão? Os animais de pequeno porte são "
       "bem-vindos, mas por favor avise-nos quando fizer a reserva. Como obtenho o reembolso da minha "
       "encomenda? Se não estiver satisfeito com o produto, devolva-o no prazo de trinta dias e "
       "reembolsaremos o valor total. Que métodos de pagamento aceitam? Aceitamos os principais cartões "
       "de crédito e transferências bancárias."},
  };
  return samples;
}

}  // namespace faqkit
